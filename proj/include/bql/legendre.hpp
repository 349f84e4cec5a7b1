#pragma once

#include <vector>

namespace bql {

// Fully normalized associated Legendre function N_k^m(x): the radial profile
// making N_k^m(cos phi) e^{i m theta} / sqrt(2 pi) a unit-L2 spherical
// harmonic, i.e. the integral of N_k^m(x)^2 over [-1,1] is 1. Includes the
// (-1)^m Condon-Shortley sign. Negative m uses |m|.
//
// Computed by the stable three-term recurrence ascending in degree at fixed
// order, with the order-m seed accumulated in log space so degrees up to
// 4096 neither overflow nor lose the scale. (Deep inside the classically
// forbidden band the true value drops below the smallest double and the
// result underflows to 0, which downstream quadrature treats correctly.)
double normalized_legendre(int k, int m, double x);

// All degrees at once: returns {N_m^m(x), N_{m+1}^m(x), ..., N_k^m(x)}.
std::vector<double> normalized_legendre_sequence(int k, int m, double x);

}  // namespace bql
