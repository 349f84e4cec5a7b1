#include "bql/grid.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <stdexcept>

#include "bql/io.hpp"

namespace bql {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void append_bytes(std::string& out, const void* p, std::size_t len) {
  out.append(static_cast<const char*>(p), len);
}

template <typename T>
T read_pod(const std::string& bytes, std::size_t& off) {
  if (off + sizeof(T) > bytes.size())
    throw std::runtime_error("load_field: truncated file");
  T v;
  std::memcpy(&v, bytes.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}
}  // namespace

std::size_t GridSpec::total_samples() const {
  std::size_t t = 1;
  for (int d = 0; d < n; ++d) t *= points_per_axis;
  return t;
}

void GridSpec::validate() const {
  if (n < 1 || n > 3)
    throw std::invalid_argument("GridSpec: dimension must be 1, 2, or 3");
  if (!is_pow2(points_per_axis) || points_per_axis < 2)
    throw std::invalid_argument("GridSpec: points_per_axis must be a power of two >= 2");
  if (!(half_length >= kPi))
    throw std::invalid_argument(
        "GridSpec: half_length must be >= pi so the dual lattice resolves unit frequencies");
  if (total_samples() > kMaxFieldBytes / sizeof(std::complex<double>))
    throw std::invalid_argument("GridSpec: sample count exceeds the memory budget");
}

GridField make_field(const GridSpec& spec, Domain domain) {
  spec.validate();
  GridField f;
  f.spec = spec;
  f.domain = domain;
  f.samples.assign(spec.total_samples(), {0.0, 0.0});
  return f;
}

double grid_coord(const GridSpec& spec, std::size_t i) {
  return -spec.half_length + double(i) * spec.spacing();
}

long dual_index(std::size_t k, std::size_t N) {
  return k < N / 2 ? long(k) : long(k) - long(N);
}

double dual_coord(const GridSpec& spec, double h, std::size_t k) {
  return h * (kPi / spec.half_length) * double(dual_index(k, spec.points_per_axis));
}

void unflatten(const GridSpec& spec, std::size_t flat, std::size_t* idx) {
  const std::size_t N = spec.points_per_axis;
  for (int d = spec.n - 1; d >= 0; --d) {
    idx[d] = flat % N;
    flat /= N;
  }
}

double l2_norm(const GridField& field) {
  if (field.domain != Domain::position)
    throw std::invalid_argument("l2_norm: expected a position-domain field");
  double s = 0.0;
  for (const auto& z : field.samples) s += std::norm(z);
  return std::sqrt(s * std::pow(field.spec.spacing(), field.spec.n));
}

double l2_norm_freq(const GridField& field, double h) {
  if (field.domain != Domain::frequency)
    throw std::invalid_argument("l2_norm_freq: expected a frequency-domain field");
  if (!(h > 0.0)) throw std::invalid_argument("l2_norm_freq: h must be positive");
  double s = 0.0;
  for (const auto& z : field.samples) s += std::norm(z);
  const double dxi = h * kPi / field.spec.half_length;
  return std::sqrt(s * std::pow(dxi, field.spec.n));
}

void normalize_l2(GridField& field) {
  const double nrm = l2_norm(field);
  if (!(nrm > 0.0)) throw std::invalid_argument("normalize_l2: zero field");
  const double inv = 1.0 / nrm;
  for (auto& z : field.samples) z *= inv;
}

void dump_field(const GridField& field, const std::string& path) {
  field.spec.validate();
  std::string out;
  out.reserve(17 + field.samples.size() * 16);
  out.append("BQL1", 4);
  const std::uint32_t n = std::uint32_t(field.spec.n);
  const std::uint32_t N = std::uint32_t(field.spec.points_per_axis);
  const double L = field.spec.half_length;
  const std::uint8_t tag = field.domain == Domain::position ? 0 : 1;
  append_bytes(out, &n, 4);
  append_bytes(out, &N, 4);
  append_bytes(out, &L, 8);
  append_bytes(out, &tag, 1);
  for (const auto& z : field.samples) {
    const double re = z.real(), im = z.imag();
    append_bytes(out, &re, 8);
    append_bytes(out, &im, 8);
  }
  atomic_write_file(path, out);
}

GridField load_field(const std::string& path) {
  const std::string bytes = read_file(path);
  if (bytes.size() < 21 || bytes.compare(0, 4, "BQL1") != 0)
    throw std::runtime_error("load_field: bad magic");
  std::size_t off = 4;
  GridSpec spec;
  spec.n = int(read_pod<std::uint32_t>(bytes, off));
  spec.points_per_axis = read_pod<std::uint32_t>(bytes, off);
  spec.half_length = read_pod<double>(bytes, off);
  const std::uint8_t tag = read_pod<std::uint8_t>(bytes, off);
  spec.validate();
  GridField f = make_field(spec, tag == 0 ? Domain::position : Domain::frequency);
  for (auto& z : f.samples) {
    const double re = read_pod<double>(bytes, off);
    const double im = read_pod<double>(bytes, off);
    z = {re, im};
  }
  if (off != bytes.size()) throw std::runtime_error("load_field: trailing bytes");
  return f;
}

}  // namespace bql
