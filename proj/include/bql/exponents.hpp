#pragma once

#include <string>
#include <vector>

// Closed-form piecewise exponent laws for L^p norms of quasimode products,
// parameterized by the semiclassical scales h >= sigma of the two factors.
// A bound of the form h^a * sigma^b * |log h|^c is carried as the exponent
// triple (a, b, c); constants hidden behind the asymptotic relations are
// never modeled, only exponents.

namespace bql {

// Lebesgue index pair (n, p). p may be infinity; every formula is affine in
// 1/p, so internally all branches evaluate 1/p with 1/inf == 0.
struct ProblemIndex {
  int n = 2;       // manifold dimension, n >= 2
  double p = 2.0;  // Lebesgue exponent in [2, inf]

  void validate() const;  // throws std::invalid_argument on bad (n, p)
  double inv_p() const;   // 1/p, exactly 0 at p = inf
};

struct ExponentPair {
  double h_exp = 0.0;      // exponent of h
  double sigma_exp = 0.0;  // exponent of sigma
  double log_exp = 0.0;    // exponent of |log h| (1/2 only at (n,p) = (3,2))
};

// Sharp single-function L^p growth exponent delta(n, p); two affine branches
// meeting at p = 2(n+1)/(n-1).
double sogge_delta(const ProblemIndex& idx);

// Sharp bilinear growth law G_{n,p}(h, sigma) as an exponent triple.
ExponentPair bilinear_G(const ProblemIndex& idx);

// Same-scale law F_{n,p}(h) (sigma_exp = 0). Satisfies the collapse identity
// F.h_exp == G.h_exp + G.sigma_exp for every admissible (n, p).
ExponentPair same_scale_F(const ProblemIndex& idx);

// Numeric value h^a * sigma^b * |log h|^c. Requires 0 < sigma <= h < 1.
double eval_bound(const ExponentPair& pair, double h, double sigma);

// Best Holder split bound min over 1/p = 1/p1 + 1/p2 of
// h^{-delta(n,p1)} * sigma^{-delta(n,p2)}, both factor assignments tried.
// Minimization runs over a fixed 512-point logarithmic grid of 1/p1 plus the
// canonical splits (p, inf), (inf, p), (2p, 2p). Requires 0 < sigma <= h < 1.
double holder_baseline(const ProblemIndex& idx, double h, double sigma);

// Exponent pair (-delta(n,p1), -delta(n,p2)) of the split minimizing the
// total exponent (the sigma = h reference geometry); used by the table view.
ExponentPair holder_baseline_exponents(const ProblemIndex& idx);

// Branch boundaries of G in p: {3, 6} for n = 2, {2(n+1)/(n-1)} for n >= 3.
std::vector<double> breakpoints(int n);

// Human-readable branch label for table output.
std::string branch_label(const ProblemIndex& idx);

}  // namespace bql
