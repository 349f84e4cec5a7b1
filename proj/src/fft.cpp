#include "bql/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace bql {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}  // namespace

Fft::Fft(std::size_t n) : n_(n) {
  if (!is_pow2(n)) throw std::invalid_argument("Fft: size must be a power of two");
  rev_.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t(1) << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < log2n; ++b)
      if (i & (std::size_t(1) << b)) r |= std::size_t(1) << (log2n - 1 - b);
    rev_[i] = r;
  }
  roots_.resize(n / 2 > 0 ? n / 2 : 1);
  for (std::size_t k = 0; k < roots_.size(); ++k) {
    const double ang = -kTwoPi * double(k) / double(n);
    roots_[k] = {std::cos(ang), std::sin(ang)};
  }
}

void Fft::run(std::complex<double>* a, bool inv) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
  for (std::size_t len = 2; len <= n_; len <<= 1) {
    const std::size_t step = n_ / len;
    for (std::size_t i = 0; i < n_; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        std::complex<double> w = roots_[k * step];
        if (inv) w = std::conj(w);
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

void Fft::forward(std::complex<double>* a) const { run(a, false); }
void Fft::inverse(std::complex<double>* a) const { run(a, true); }

void fft_nd(std::vector<std::complex<double>>& data, int n_dims, std::size_t n,
            bool inverse) {
  if (n_dims < 1) throw std::invalid_argument("fft_nd: need at least one axis");
  std::size_t total = 1;
  for (int d = 0; d < n_dims; ++d) total *= n;
  if (data.size() != total) throw std::invalid_argument("fft_nd: size mismatch");

  const Fft plan(n);
  std::vector<std::complex<double>> line(n);
  // axis d has stride n^(n_dims-1-d) in the row-major layout
  std::size_t stride = total / n;
  for (int d = 0; d < n_dims; ++d) {
    const std::size_t n_lines = total / n;
    for (std::size_t li = 0; li < n_lines; ++li) {
      // decompose the line index into (outer, inner) around the axis
      const std::size_t outer = li / stride;
      const std::size_t inner = li % stride;
      const std::size_t base = outer * stride * n + inner;
      if (stride == 1) {
        if (inverse)
          plan.inverse(&data[base]);
        else
          plan.forward(&data[base]);
      } else {
        for (std::size_t k = 0; k < n; ++k) line[k] = data[base + k * stride];
        if (inverse)
          plan.inverse(line.data());
        else
          plan.forward(line.data());
        for (std::size_t k = 0; k < n; ++k) data[base + k * stride] = line[k];
      }
    }
    stride /= n;
  }
}

}  // namespace bql
