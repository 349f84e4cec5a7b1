#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace bql {

// Iterative radix-2 complex FFT with a precomputed root table. Both
// directions are unnormalized (the inverse does NOT divide by n); callers
// own the overall scale. Deterministic: no runtime dispatch, fixed butterfly
// order.
class Fft {
 public:
  explicit Fft(std::size_t n);  // n must be a power of two >= 1

  void forward(std::complex<double>* a) const;  // kernel e^{-2*pi*i*mk/n}
  void inverse(std::complex<double>* a) const;  // kernel e^{+2*pi*i*mk/n}

  std::size_t size() const { return n_; }

 private:
  void run(std::complex<double>* a, bool inv) const;

  std::size_t n_ = 1;
  std::vector<std::size_t> rev_;                // bit-reversal permutation
  std::vector<std::complex<double>> roots_;     // e^{-2*pi*i*k/n}, k < n/2
};

// Apply the FFT along every axis of an n_dims-dimensional row-major cube
// with extent per axis n (data.size() == n^n_dims). Unnormalized like Fft.
void fft_nd(std::vector<std::complex<double>>& data, int n_dims, std::size_t n,
            bool inverse);

}  // namespace bql
