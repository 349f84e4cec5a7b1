#pragma once

#include <cstddef>
#include <vector>

namespace bql {

// Gauss-Legendre nodes and weights on [-1,1]: n-point rule, exact for
// polynomials of degree <= 2n-1. Nodes ascending, symmetric by construction.
void gauss_legendre(std::size_t n, std::vector<double>& nodes,
                    std::vector<double>& weights);

// Product quadrature on the unit sphere: Gauss-Legendre in mu = cos(phi)
// times a uniform trapezoid rule in theta. Exact for spherical polynomials
// of degree <= 2*n_mu-1 whose theta modes stay below n_theta.
struct SphereQuadrature {
  std::vector<double> mu;    // Gauss-Legendre nodes in cos(phi), ascending
  std::vector<double> w_mu;  // matching weights (sum to 2)
  std::size_t n_theta = 0;   // uniform theta nodes: theta_j = 2*pi*j/n_theta

  std::size_t n_mu() const { return mu.size(); }
  std::size_t total_nodes() const { return mu.size() * n_theta; }
  double theta(std::size_t j) const;
  // weight of any node on ring i (independent of theta)
  double ring_weight(std::size_t i) const;
};

SphereQuadrature make_sphere_quadrature(std::size_t n_mu, std::size_t n_theta);

}  // namespace bql
