#include "bql/flat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "bql/fft.hpp"

namespace bql {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

// parity of the sum of per-axis indices of a flat row-major index
int index_parity(const GridSpec& spec, std::size_t flat) {
  const std::size_t N = spec.points_per_axis;
  int par = 0;
  for (int d = 0; d < spec.n; ++d) {
    par ^= int(flat & 1);  // low bit of this axis index
    flat /= N;
  }
  return par;
}

void check_unit_shell(const GridSpec& spec, double h) {
  if (!(h > 0.0) || !(h < 1.0))
    throw std::invalid_argument("semiclassical scale h must lie in (0,1)");
  const double xi_max = h * kPi * double(spec.points_per_axis) / (2.0 * spec.half_length);
  if (xi_max < 1.0 + h)
    throw std::invalid_argument(
        "unit frequency shell not representable: increase N or h, or shrink L");
}

// |x|^p for even integer p via repeated squaring of |x|^2 (no sqrt, no pow)
double abs_pow(double norm_sq, double p) {
  const long ip = std::lround(p);
  if (double(ip) == p && ip >= 2 && ip % 2 == 0 && ip <= 64) {
    double acc = 1.0, base = norm_sq;
    long e = ip / 2;
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }
  return std::pow(norm_sq, 0.5 * p);
}

}  // namespace

GridField semiclassical_fourier(const GridField& field, double h,
                                FourierDirection direction) {
  field.spec.validate();
  check_unit_shell(field.spec, h);
  const bool fwd = direction == FourierDirection::forward;
  if (fwd && field.domain != Domain::position)
    throw std::invalid_argument("semiclassical_fourier: forward expects a position field");
  if (!fwd && field.domain != Domain::frequency)
    throw std::invalid_argument("semiclassical_fourier: inverse expects a frequency field");

  const GridSpec& spec = field.spec;
  const std::size_t N = spec.points_per_axis;
  const double dx = spec.spacing();
  const double dxi = h * kPi / spec.half_length;

  GridField out;
  out.spec = spec;
  out.domain = fwd ? Domain::frequency : Domain::position;
  out.samples = field.samples;

  // The box offset -L turns the kernel e^{-(i/h)<x,xi_j>} into
  // (-1)^(sum j_d) * DFT kernel; N even lets the sign ride on the bin parity.
  if (fwd) {
    fft_nd(out.samples, spec.n, N, false);
    const double scale = std::pow(2.0 * kPi * h, -0.5 * spec.n) * std::pow(dx, spec.n);
    for (std::size_t i = 0; i < out.samples.size(); ++i) {
      const double s = index_parity(spec, i) ? -scale : scale;
      out.samples[i] *= s;
    }
  } else {
    for (std::size_t i = 0; i < out.samples.size(); ++i)
      if (index_parity(spec, i)) out.samples[i] = -out.samples[i];
    fft_nd(out.samples, spec.n, N, true);
    const double scale = std::pow(2.0 * kPi * h, -0.5 * spec.n) * std::pow(dxi, spec.n);
    for (auto& z : out.samples) z *= scale;
  }
  return out;
}

void TubeSpec::validate(const GridSpec& spec) const {
  spec.validate();
  if (!(h > 0.0) || !(h < 1.0))
    throw std::invalid_argument("TubeSpec: h must lie in (0,1)");
  if (!(alpha >= 0.0) || !(alpha <= 0.5))
    throw std::invalid_argument("TubeSpec: alpha must lie in [0,1/2]");
  if (int(direction.size()) != spec.n)
    throw std::invalid_argument("TubeSpec: direction dimension mismatch");
  double nrm = 0.0;
  for (double c : direction) nrm += c * c;
  if (std::abs(nrm - 1.0) > 1e-12)
    throw std::invalid_argument("TubeSpec: direction must be a unit vector");
  check_unit_shell(spec, h);
  // dual lattice spacing is h*pi/L, so the shell of width 2h spans 2L/pi
  // cells and the cap of width 2h^alpha spans (2L/pi)*h^(alpha-1) cells
  const double radial_cells = 2.0 * spec.half_length / kPi;
  if (radial_cells < 4.0 - 1e-12)
    throw std::invalid_argument("TubeSpec: radial shell spans fewer than 4 dual cells");
  const double cap_cells = radial_cells * std::pow(h, alpha - 1.0);
  if (cap_cells < 4.0 - 1e-12)
    throw std::invalid_argument("TubeSpec: angular cap spans fewer than 4 dual cells");
}

GridField build_tube(const GridSpec& spec, const TubeSpec& tube) {
  tube.validate(spec);
  GridField freq = make_field(spec, Domain::frequency);
  const std::size_t N = spec.points_per_axis;
  const double cap = std::pow(tube.h, tube.alpha);

  std::size_t idx[3] = {0, 0, 0};
  double xi[3] = {0.0, 0.0, 0.0};
  std::size_t count = 0;
  for (std::size_t flat = 0; flat < freq.samples.size(); ++flat) {
    unflatten(spec, flat, idx);
    double r2 = 0.0;
    for (int d = 0; d < spec.n; ++d) {
      xi[d] = dual_coord(spec, tube.h, idx[d]);
      r2 += xi[d] * xi[d];
    }
    const double r = std::sqrt(r2);
    if (std::abs(r - 1.0) >= tube.h || r == 0.0) continue;
    double cd2 = 0.0;
    for (int d = 0; d < spec.n; ++d) {
      const double diff = xi[d] / r - tube.direction[d];
      cd2 += diff * diff;
    }
    if (cd2 >= cap * cap) continue;
    freq.samples[flat] = {1.0, 0.0};
    ++count;
    (void)N;
  }
  if (count == 0)
    throw std::invalid_argument("build_tube: tube region contains no dual lattice cells");

  GridField pos = semiclassical_fourier(freq, tube.h, FourierDirection::inverse);
  normalize_l2(pos);
  return pos;
}

double quasimode_defect(const GridField& field, double h) {
  if (field.domain != Domain::position)
    throw std::invalid_argument("quasimode_defect: expected a position field");
  const double denom = l2_norm(field);
  if (!(denom > 0.0)) throw std::invalid_argument("quasimode_defect: zero field");

  GridField freq = semiclassical_fourier(field, h, FourierDirection::forward);
  const GridSpec& spec = field.spec;
  std::size_t idx[3] = {0, 0, 0};
  for (std::size_t flat = 0; flat < freq.samples.size(); ++flat) {
    unflatten(spec, flat, idx);
    double r2 = 0.0;
    for (int d = 0; d < spec.n; ++d) {
      const double x = dual_coord(spec, h, idx[d]);
      r2 += x * x;
    }
    freq.samples[flat] *= (r2 - 1.0);
  }
  return l2_norm_freq(freq, h) / denom;
}

double lp_norm(const GridField& field, double p) {
  if (field.domain != Domain::position)
    throw std::invalid_argument("lp_norm: expected a position field");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  if (std::isinf(p)) {
    double mx = 0.0;
    for (const auto& z : field.samples) mx = std::max(mx, std::abs(z));
    return mx;
  }
  double s = 0.0;
  for (const auto& z : field.samples) s += abs_pow(std::norm(z), p);
  const double cell = std::pow(field.spec.spacing(), field.spec.n);
  return std::pow(s * cell, 1.0 / p);
}

GridField product_field(const GridField& f, const GridField& g) {
  if (!(f.spec == g.spec))
    throw std::invalid_argument("product_field: grid specs differ");
  if (f.domain != Domain::position || g.domain != Domain::position)
    throw std::invalid_argument("product_field: expected position fields");
  GridField out = f;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] *= g.samples[i];
  return out;
}

double mid_p_alpha(double h, double sigma) {
  if (!(sigma > 0.0) || !(sigma <= h) || !(h < 1.0))
    throw std::invalid_argument("mid_p_alpha: need 0 < sigma <= h < 1");
  const double alpha = 0.5 * (1.0 - std::log(h) / std::log(sigma));
  if (alpha < -1e-12 || alpha >= 0.5)
    throw std::invalid_argument("mid_p_alpha: scales give alpha outside [0,1/2)");
  return std::max(alpha, 0.0);
}

std::pair<GridField, GridField> regime_tubes(Regime regime, double h,
                                             double sigma,
                                             const GridSpec& spec) {
  if (!(sigma <= h))
    throw std::invalid_argument("regime_tubes: requires sigma <= h");
  std::vector<double> e1(std::size_t(spec.n), 0.0);
  e1[0] = 1.0;

  double alpha_h = 0.0, alpha_sigma = 0.0;
  switch (regime) {
    case Regime::large_p:
      break;
    case Regime::mid_p:
      alpha_sigma = mid_p_alpha(h, sigma);
      break;
    case Regime::small_p_2d:
      if (spec.n != 2)
        throw std::invalid_argument("regime_tubes: small_p regime is two-dimensional");
      alpha_h = alpha_sigma = 0.5;
      break;
  }
  TubeSpec th{h, alpha_h, e1};
  TubeSpec ts{sigma, alpha_sigma, e1};
  return {build_tube(spec, th), build_tube(spec, ts)};
}

GridField frequency_ball_packet(const GridSpec& spec, double h, double radius) {
  spec.validate();
  check_unit_shell(spec, h);
  if (!(radius > 0.0)) throw std::invalid_argument("frequency_ball_packet: radius must be positive");
  GridField freq = make_field(spec, Domain::frequency);
  std::size_t idx[3] = {0, 0, 0};
  std::size_t count = 0;
  for (std::size_t flat = 0; flat < freq.samples.size(); ++flat) {
    unflatten(spec, flat, idx);
    double d2 = 0.0;
    for (int d = 0; d < spec.n; ++d) {
      const double x = dual_coord(spec, h, idx[d]) - (d == 0 ? 1.0 : 0.0);
      d2 += x * x;
    }
    if (d2 < radius * radius) {
      freq.samples[flat] = {1.0, 0.0};
      ++count;
    }
  }
  if (count == 0)
    throw std::invalid_argument("frequency_ball_packet: ball contains no dual cells");
  GridField pos = semiclassical_fourier(freq, h, FourierDirection::inverse);
  normalize_l2(pos);
  return pos;
}

BoxFloor box_floor(const GridField& field, const std::vector<double>& half_widths) {
  if (field.domain != Domain::position)
    throw std::invalid_argument("box_floor: expected a position field");
  if (int(half_widths.size()) != field.spec.n)
    throw std::invalid_argument("box_floor: half-width dimension mismatch");
  const GridSpec& spec = field.spec;
  BoxFloor result;
  result.min_abs = std::numeric_limits<double>::infinity();
  std::size_t idx[3] = {0, 0, 0};
  for (std::size_t flat = 0; flat < field.samples.size(); ++flat) {
    unflatten(spec, flat, idx);
    bool in = true;
    for (int d = 0; d < spec.n && in; ++d)
      in = std::abs(grid_coord(spec, idx[d])) < half_widths[d];
    if (!in) continue;
    result.min_abs = std::min(result.min_abs, std::abs(field.samples[flat]));
    ++result.nodes;
  }
  if (result.nodes == 0)
    throw std::invalid_argument("box_floor: box contains no grid nodes");
  return result;
}

std::vector<double> half_max_extents(const GridField& field) {
  if (field.domain != Domain::position)
    throw std::invalid_argument("half_max_extents: expected a position field");
  double mx = 0.0;
  for (const auto& z : field.samples) mx = std::max(mx, std::abs(z));
  if (!(mx > 0.0)) throw std::invalid_argument("half_max_extents: zero field");
  const GridSpec& spec = field.spec;
  std::vector<double> ext(std::size_t(spec.n), 0.0);
  std::size_t idx[3] = {0, 0, 0};
  for (std::size_t flat = 0; flat < field.samples.size(); ++flat) {
    if (std::abs(field.samples[flat]) < 0.5 * mx) continue;
    unflatten(spec, flat, idx);
    for (int d = 0; d < spec.n; ++d)
      ext[std::size_t(d)] = std::max(ext[std::size_t(d)],
                                     std::abs(grid_coord(spec, idx[d])));
  }
  return ext;
}

}  // namespace bql
