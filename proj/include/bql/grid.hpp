#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace bql {

// Hard cap on one field's sample storage; keeps grids inside the machine
// budget even when several fields are alive at once.
inline constexpr std::size_t kMaxFieldBytes = 2'000'000'000;

// Uniform periodic box [-L, L)^n sampled with N points per axis.
struct GridSpec {
  int n = 2;                           // spatial dimension
  double half_length = 0.0;            // L
  std::size_t points_per_axis = 0;     // N, a power of two

  double spacing() const { return 2.0 * half_length / double(points_per_axis); }
  std::size_t total_samples() const;
  void validate() const;  // n in {1,2,3}, N power of two, L >= pi, memory cap

  bool operator==(const GridSpec& o) const {
    return n == o.n && half_length == o.half_length &&
           points_per_axis == o.points_per_axis;
  }
};

enum class Domain { position, frequency };

// Complex samples on the grid, row-major (axis 0 slowest). Frequency-domain
// fields live on the semiclassical dual lattice xi_j = h*(pi/L)*j with
// j in [-N/2, N/2) stored in DFT bin order (bin k holds j = k for k < N/2,
// j = k - N otherwise); the h that fixes the lattice is passed to each
// operation rather than stored.
struct GridField {
  GridSpec spec;
  Domain domain = Domain::position;
  std::vector<std::complex<double>> samples;
};

GridField make_field(const GridSpec& spec, Domain domain);

// Position coordinate of index i along one axis: -L + i*spacing.
double grid_coord(const GridSpec& spec, std::size_t i);

// Signed dual-lattice integer j for DFT bin k (N even): k < N/2 ? k : k - N.
long dual_index(std::size_t k, std::size_t N);

// Frequency coordinate of bin k along one axis: h*(pi/L)*dual_index(k).
double dual_coord(const GridSpec& spec, double h, std::size_t k);

// Decompose a flat row-major sample index into per-axis indices.
void unflatten(const GridSpec& spec, std::size_t flat, std::size_t* idx);

// Discrete L2 norm: position fields use cell volume spacing^n; frequency
// fields use the dual cell volume (h*pi/L)^n, so h is required there.
double l2_norm(const GridField& field);
double l2_norm_freq(const GridField& field, double h);

// Scale samples so the discrete (position) L2 norm is exactly 1.
void normalize_l2(GridField& field);

// Binary field dump: magic "BQL1", u32 n, u32 N, f64 L, u8 domain tag, then
// N^n samples as (f64 re, f64 im), row-major, little-endian. Written
// atomically.
void dump_field(const GridField& field, const std::string& path);
GridField load_field(const std::string& path);

}  // namespace bql
