#include "bql/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bql {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void ProblemIndex::validate() const {
  if (n < 2) throw std::invalid_argument("ProblemIndex: dimension n must be >= 2");
  if (!(p >= 2.0)) throw std::invalid_argument("ProblemIndex: Lebesgue index p must be >= 2");
}

double ProblemIndex::inv_p() const { return p == kInf ? 0.0 : 1.0 / p; }

double sogge_delta(const ProblemIndex& idx) {
  idx.validate();
  const double q = idx.inv_p();
  const double n = idx.n;
  const double q_star = (n - 1.0) / (2.0 * (n + 1.0));  // 1/p at p = 2(n+1)/(n-1)
  if (q >= q_star) return (n - 1.0) / 4.0 - (n - 1.0) / 2.0 * q;
  return (n - 1.0) / 2.0 - n * q;
}

ExponentPair bilinear_G(const ProblemIndex& idx) {
  idx.validate();
  const double q = idx.inv_p();
  const double n = idx.n;
  if (idx.n == 2) {
    if (q >= 1.0 / 3.0) return {-0.25, 0.5 * q - 0.25, 0.0};          // 2 <= p <= 3
    if (q >= 1.0 / 6.0) return {1.5 * q - 0.75, 0.5 * q - 0.25, 0.0};  // 3 <= p <= 6
    return {-0.5, 2.0 * q - 0.5, 0.0};                                 // 6 <= p <= inf
  }
  if (idx.n == 3 && idx.p == 2.0) return {-0.5, 0.0, 0.5};
  const double q_star = (n - 1.0) / (2.0 * (n + 1.0));
  if (q >= q_star)
    return {-0.75 * (n - 1.0) + 0.5 * (n + 1.0) * q,
            -0.25 * (n - 1.0) + 0.5 * (n - 1.0) * q, 0.0};
  return {-0.5 * (n - 1.0), -0.5 * (n - 1.0) + n * q, 0.0};
}

ExponentPair same_scale_F(const ProblemIndex& idx) {
  idx.validate();
  const double q = idx.inv_p();
  const double n = idx.n;
  if (idx.n == 2) {
    if (q >= 1.0 / 3.0) return {-0.5 + 0.5 * q, 0.0, 0.0};  // 2 <= p <= 3
    return {-1.0 + 2.0 * q, 0.0, 0.0};                      // 3 <= p <= inf
  }
  if (idx.n == 3 && idx.p == 2.0) return {-0.5, 0.0, 0.5};
  return {-(n - 1.0) + n * q, 0.0, 0.0};
}

double eval_bound(const ExponentPair& pair, double h, double sigma) {
  if (!(h > 0.0) || !(sigma > 0.0))
    throw std::invalid_argument("eval_bound: h and sigma must be positive");
  if (h >= 1.0) throw std::invalid_argument("eval_bound: requires h < 1");
  if (sigma > h) throw std::invalid_argument("eval_bound: requires sigma <= h");
  double v = std::pow(h, pair.h_exp) * std::pow(sigma, pair.sigma_exp);
  if (pair.log_exp != 0.0) v *= std::pow(std::abs(std::log(h)), pair.log_exp);
  return v;
}

namespace {

// Enumerate admissible splits 1/p = q1 + q2 as values of q1; q1 = 0 is the
// (inf, p) split. delta is piecewise affine in 1/p, so the true minimum sits
// at a breakpoint or endpoint; the dense grid plus canonical splits finds it.
std::vector<double> split_grid(double q) {
  std::vector<double> qs;
  qs.push_back(0.0);
  if (q > 0.0) {
    constexpr int kGrid = 512;
    const double lo = q * 1e-6;
    for (int i = 0; i < kGrid; ++i)
      qs.push_back(lo * std::pow(q / lo, double(i) / (kGrid - 1)));
    qs.push_back(0.5 * q);  // the (2p, 2p) split
    qs.push_back(q);        // the (p, inf) split
  }
  return qs;
}

}  // namespace

double holder_baseline(const ProblemIndex& idx, double h, double sigma) {
  idx.validate();
  if (!(h > 0.0) || !(sigma > 0.0) || h >= 1.0 || sigma > h)
    throw std::invalid_argument("holder_baseline: requires 0 < sigma <= h < 1");
  const double q = idx.inv_p();
  double best = kInf;
  for (double q1 : split_grid(q)) {
    const double q2 = q - q1;
    const ProblemIndex i1{idx.n, q1 > 0.0 ? 1.0 / q1 : kInf};
    const ProblemIndex i2{idx.n, q2 > 0.0 ? 1.0 / q2 : kInf};
    const double d1 = sogge_delta(i1), d2 = sogge_delta(i2);
    best = std::min(best, std::pow(h, -d1) * std::pow(sigma, -d2));
    best = std::min(best, std::pow(h, -d2) * std::pow(sigma, -d1));
  }
  return best;
}

ExponentPair holder_baseline_exponents(const ProblemIndex& idx) {
  idx.validate();
  const double q = idx.inv_p();
  double best_sum = kInf;
  ExponentPair best{0.0, 0.0, 0.0};
  for (double q1 : split_grid(q)) {
    const double q2 = q - q1;
    const ProblemIndex i1{idx.n, q1 > 0.0 ? 1.0 / q1 : kInf};
    const ProblemIndex i2{idx.n, q2 > 0.0 ? 1.0 / q2 : kInf};
    const double d1 = sogge_delta(i1), d2 = sogge_delta(i2);
    if (d1 + d2 < best_sum) {
      best_sum = d1 + d2;
      // larger exponent magnitude on h (the lower-frequency factor)
      best = {-std::max(d1, d2), -std::min(d1, d2), 0.0};
    }
  }
  return best;
}

std::vector<double> breakpoints(int n) {
  if (n < 2) throw std::invalid_argument("breakpoints: n must be >= 2");
  if (n == 2) return {3.0, 6.0};
  return {2.0 * (n + 1.0) / (n - 1.0)};
}

std::string branch_label(const ProblemIndex& idx) {
  idx.validate();
  if (idx.n == 2) {
    if (idx.p <= 3.0) return "2<=p<=3";
    if (idx.p <= 6.0) return "3<=p<=6";
    return "6<=p<=inf";
  }
  if (idx.n == 3 && idx.p == 2.0) return "(3,2) log";
  const double p_star = 2.0 * (idx.n + 1.0) / (idx.n - 1.0);
  return idx.p <= p_star ? "2<=p<=2(n+1)/(n-1)" : "p>=2(n+1)/(n-1)";
}

}  // namespace bql
