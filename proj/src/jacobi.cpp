#include "bql/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bql {

std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  if (n == 0) throw std::invalid_argument("jacobi_eigenvalues: empty matrix");
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != n)
      throw std::invalid_argument("jacobi_eigenvalues: matrix not square");
    for (std::size_t j = 0; j < n; ++j) {
      if (std::abs(a[i][j] - a[j][i]) > 1e-12 * (1.0 + std::abs(a[i][j])))
        throw std::invalid_argument("jacobi_eigenvalues: matrix not symmetric");
      scale = std::max(scale, std::abs(a[i][j]));
    }
  }
  if (scale == 0.0) return std::vector<double>(n, 0.0);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-28 * scale * scale) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t i = 0; i < n; ++i) {
          const double aip = a[i][p], aiq = a[i][q];
          a[i][p] = c * aip - s * aiq;
          a[i][q] = s * aip + c * aiq;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const double api = a[p][i], aqi = a[q][i];
          a[p][i] = c * api - s * aqi;
          a[q][i] = s * api + c * aqi;
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = a[i][i];
  std::sort(eig.begin(), eig.end());
  return eig;
}

std::vector<double> hermitian_eigenvalues(
    const std::vector<std::vector<std::complex<double>>>& h) {
  const std::size_t m = h.size();
  if (m == 0) throw std::invalid_argument("hermitian_eigenvalues: empty matrix");
  for (std::size_t i = 0; i < m; ++i) {
    if (h[i].size() != m)
      throw std::invalid_argument("hermitian_eigenvalues: matrix not square");
    for (std::size_t j = 0; j < m; ++j)
      if (std::abs(h[i][j] - std::conj(h[j][i])) > 1e-12 * (1.0 + std::abs(h[i][j])))
        throw std::invalid_argument("hermitian_eigenvalues: matrix not Hermitian");
  }
  std::vector<std::vector<double>> a(2 * m, std::vector<double>(2 * m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      a[i][j] = h[i][j].real();
      a[i][m + j] = -h[i][j].imag();
      a[m + i][j] = h[i][j].imag();
      a[m + i][m + j] = h[i][j].real();
    }
  // exact symmetrization of the embedding (Hermiticity is only approximate)
  for (std::size_t i = 0; i < 2 * m; ++i)
    for (std::size_t j = i + 1; j < 2 * m; ++j) {
      const double v = 0.5 * (a[i][j] + a[j][i]);
      a[i][j] = v;
      a[j][i] = v;
    }
  const std::vector<double> doubled = jacobi_eigenvalues(std::move(a));
  std::vector<double> eig(m);
  for (std::size_t i = 0; i < m; ++i) eig[i] = doubled[2 * i];
  return eig;
}

}  // namespace bql
