#include "bql/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace bql {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

// P_n(x) and P_n'(x) by the three-term recurrence.
void legendre_pair(std::size_t n, double x, double& p, double& dp) {
  double p0 = 1.0, p1 = x;
  if (n == 0) {
    p = 1.0;
    dp = 0.0;
    return;
  }
  for (std::size_t j = 2; j <= n; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / double(j);
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
}
}  // namespace

void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                    std::vector<double>& weights) {
  if (n == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Tricomi-style initial guess for the i-th root (descending order)
    double x = std::cos(kPi * (double(i) + 0.75) / (double(n) + 0.5));
    double p = 0.0, dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      legendre_pair(n, x, p, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    legendre_pair(n, x, p, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // store ascending; mirror the symmetric partner exactly
    nodes[i] = -x;
    weights[i] = w;
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
}

double SphereQuadrature::theta(std::size_t j) const {
  return 2.0 * kPi * double(j) / double(n_theta);
}

double SphereQuadrature::ring_weight(std::size_t i) const {
  return w_mu[i] * 2.0 * kPi / double(n_theta);
}

SphereQuadrature make_sphere_quadrature(std::size_t n_mu, std::size_t n_theta) {
  if (n_theta == 0)
    throw std::invalid_argument("make_sphere_quadrature: need theta nodes");
  SphereQuadrature q;
  gauss_legendre(n_mu, q.mu, q.w_mu);
  q.n_theta = n_theta;
  return q;
}

}  // namespace bql
