#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "bql/grid.hpp"

namespace bql {

enum class FourierDirection { forward, inverse };

// Semiclassical Fourier transform on the periodic grid: the Riemann sum of
// (2*pi*h)^{-n/2} * integral of e^{-(i/h)<x,xi>} u(x) dx over the box,
// evaluated on the dual lattice xi_j = h*(pi/L)*j. The inverse uses the
// conjugate kernel and dual cell volume (h*pi/L)^n. The pair is exactly
// unitary on the grid: forward then inverse is the identity and the discrete
// L2 norms match. Requires the unit frequency shell (radius 1+h) to be
// representable: h*pi*N/(2L) >= 1+h.
GridField semiclassical_fourier(const GridField& field, double h,
                                FourierDirection direction);

// Fourier-tube quasimode parameters: frequency support in the radial shell
// { | |xi|-1 | < h } intersected with the angular cap
// { |xi/|xi| - direction| < h^alpha } (Euclidean distance of unit vectors).
struct TubeSpec {
  double h = 0.0;
  double alpha = 0.0;
  std::vector<double> direction;  // unit vector, size = spec.n

  // Checks h in (0,1), alpha in [0,1/2], unit direction, and resolution:
  // the shell must span >= 4 dual cells radially (2L/pi >= 4), the cap >= 4
  // cells transversally ((2L/pi)*h^(alpha-1) >= 4), and the shell must fit
  // inside the representable frequency range.
  void validate(const GridSpec& spec) const;
};

// Indicator of the tube's frequency region on the dual lattice, transformed
// to position space and renormalized to exact discrete L2 norm 1.
GridField build_tube(const GridSpec& spec, const TubeSpec& tube);

// ||(|xi|^2 - 1) F_h u||_2 / ||u||_2, the Fourier-multiplier defect that
// makes u an O(h) quasimode when its frequency support hugs the unit sphere.
double quasimode_defect(const GridField& field, double h);

// Riemann-sum L^p norm with cell volume spacing^n; p = infinity is the exact
// maximum of |samples|. Position-domain fields only.
double lp_norm(const GridField& field, double p);

// Pointwise product, no renormalization. Specs must match exactly.
GridField product_field(const GridField& f, const GridField& g);

// The three saturating product regimes: tube pairs (T^h, T^sigma) with
// co-axial directions e_1.
//   large_p:    both caps full (alpha = 0)
//   mid_p:      h-tube alpha = 0, sigma-tube alpha solving sigma^(1-2a) = h
//   small_p_2d: both alpha = 1/2 (two dimensions only)
enum class Regime { large_p, mid_p, small_p_2d };

std::pair<GridField, GridField> regime_tubes(Regime regime, double h,
                                             double sigma,
                                             const GridSpec& spec);

// The alpha solving sigma^(1-2*alpha) = h for sigma <= h < 1; 0 when h=sigma.
double mid_p_alpha(double h, double sigma);

// Wave packet whose semiclassical Fourier transform is the indicator of the
// ball |xi - e_1| < radius, L2-normalized; the standard saturator of the
// frequency-localized L^p bounds.
GridField frequency_ball_packet(const GridSpec& spec, double h,
                                double radius = 0.5);

// Minimum of |field| over the axis-aligned box {|x_d| < half_widths[d]}.
struct BoxFloor {
  double min_abs = 0.0;
  std::size_t nodes = 0;
};
BoxFloor box_floor(const GridField& field, const std::vector<double>& half_widths);

// Per-axis maximum |x_d| over the region {|field| >= max|field|/2}; measures
// the extents of the concentration region.
std::vector<double> half_max_extents(const GridField& field);

}  // namespace bql
