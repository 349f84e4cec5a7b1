#include "bql/legendre.hpp"

#include <cmath>
#include <stdexcept>

namespace bql {

namespace {

void check_args(int k, int m, double x) {
  if (k < 0) throw std::invalid_argument("normalized_legendre: degree must be >= 0");
  if (m > k || -m > k)
    throw std::invalid_argument("normalized_legendre: order exceeds degree");
  if (!(x >= -1.0) || !(x <= 1.0))
    throw std::invalid_argument("normalized_legendre: argument outside [-1,1]");
}

// N_m^m(x) = (-1)^m sqrt((2m+1)/2 * (2m-1)!!/(2m)!!) (1-x^2)^{m/2},
// accumulated as exp(log) to survive large m.
double seed(int m, double x) {
  if (m == 0) return std::sqrt(0.5);
  const double s2 = (1.0 - x) * (1.0 + x);
  if (s2 <= 0.0) return 0.0;
  double lg = 0.5 * std::log(0.5 * (2.0 * m + 1.0));
  for (int j = 1; j <= m; ++j) lg += 0.5 * std::log((2.0 * j - 1.0) / (2.0 * j));
  lg += 0.5 * double(m) * std::log(s2);
  const double v = std::exp(lg);
  return (m % 2 == 0) ? v : -v;
}

}  // namespace

std::vector<double> normalized_legendre_sequence(int k, int m, double x) {
  check_args(k, m, x);
  m = m < 0 ? -m : m;
  std::vector<double> out;
  out.reserve(std::size_t(k - m + 1));
  double prev2 = 0.0;
  double prev1 = seed(m, x);
  out.push_back(prev1);
  for (int j = m + 1; j <= k; ++j) {
    const double jm = double(j) * j - double(m) * m;
    const double a = std::sqrt((4.0 * j * j - 1.0) / jm);
    const double b =
        std::sqrt((2.0 * j + 1.0) * (j - 1.0 + m) * (j - 1.0 - m) /
                  ((2.0 * j - 3.0) * jm));
    const double cur = a * x * prev1 - b * prev2;
    out.push_back(cur);
    prev2 = prev1;
    prev1 = cur;
  }
  return out;
}

double normalized_legendre(int k, int m, double x) {
  check_args(k, m, x);
  m = m < 0 ? -m : m;
  double prev2 = 0.0;
  double prev1 = seed(m, x);
  for (int j = m + 1; j <= k; ++j) {
    const double jm = double(j) * j - double(m) * m;
    const double a = std::sqrt((4.0 * j * j - 1.0) / jm);
    const double b =
        std::sqrt((2.0 * j + 1.0) * (j - 1.0 + m) * (j - 1.0 - m) /
                  ((2.0 * j - 3.0) * jm));
    const double cur = a * x * prev1 - b * prev2;
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

}  // namespace bql
