#include "bql/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace bql {

namespace {

// Solve the square system A x = b in place by Gaussian elimination with
// partial pivoting. Throws if a pivot is numerically zero.
std::vector<double> solve_dense(std::vector<std::vector<double>> A,
                                std::vector<double> b) {
  const std::size_t m = A.size();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
    if (std::abs(A[piv][col]) < 1e-12)
      throw std::runtime_error(
          "power_law_fit: rank-deficient design matrix (collinear regressors); "
          "decouple the sweep grid");
    std::swap(A[col], A[piv]);
    std::swap(b[col], b[piv]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < m; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(m, 0.0);
  for (std::size_t i = m; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < m; ++c) s -= A[i][c] * x[c];
    x[i] = s / A[i][i];
  }
  return x;
}

}  // namespace

ScalingFit power_law_fit(const std::vector<SweepPoint>& points,
                         const std::vector<std::string>& regressors) {
  const std::size_t k = regressors.size();
  if (k == 0) throw std::invalid_argument("power_law_fit: no regressors");
  if (points.size() < k + 2)
    throw std::invalid_argument(
        "power_law_fit: need at least regressors+2 points");

  // Design matrix rows [1, log param_1, ..., log param_k]; response log value.
  std::vector<std::vector<double>> X;
  std::vector<double> y;
  X.reserve(points.size());
  y.reserve(points.size());
  for (const SweepPoint& pt : points) {
    if (!(pt.value > 0.0) || !std::isfinite(pt.value))
      throw std::invalid_argument("power_law_fit: values must be positive and finite");
    std::vector<double> row(k + 1, 1.0);
    for (std::size_t j = 0; j < k; ++j) {
      auto it = pt.parameters.find(regressors[j]);
      if (it == pt.parameters.end())
        throw std::invalid_argument("power_law_fit: point lacks regressor '" +
                                    regressors[j] + "'");
      if (!(it->second > 0.0))
        throw std::invalid_argument("power_law_fit: parameters must be positive");
      row[j + 1] = std::log(it->second);
    }
    X.push_back(std::move(row));
    y.push_back(std::log(pt.value));
  }

  // Each regressor must span at least two dyadic octaves, or the slope is
  // dominated by constants instead of scaling.
  for (std::size_t j = 0; j < k; ++j) {
    double lo = X[0][j + 1], hi = X[0][j + 1];
    for (const auto& row : X) {
      lo = std::min(lo, row[j + 1]);
      hi = std::max(hi, row[j + 1]);
    }
    if (hi - lo < 2.0 * std::log(2.0) - 1e-9)
      throw std::invalid_argument("power_law_fit: regressor '" + regressors[j] +
                                  "' spans fewer than two octaves");
  }

  // Normal equations X^T X beta = X^T y.
  const std::size_t m = k + 1;
  std::vector<std::vector<double>> XtX(m, std::vector<double>(m, 0.0));
  std::vector<double> Xty(m, 0.0);
  for (std::size_t r = 0; r < X.size(); ++r)
    for (std::size_t i = 0; i < m; ++i) {
      Xty[i] += X[r][i] * y[r];
      for (std::size_t j = 0; j < m; ++j) XtX[i][j] += X[r][i] * X[r][j];
    }
  const std::vector<double> beta = solve_dense(std::move(XtX), std::move(Xty));

  double y_mean = 0.0;
  for (double v : y) y_mean += v;
  y_mean /= double(y.size());
  double ss_tot = 0.0, ss_res = 0.0, max_res = 0.0;
  for (std::size_t r = 0; r < X.size(); ++r) {
    double pred = 0.0;
    for (std::size_t i = 0; i < m; ++i) pred += X[r][i] * beta[i];
    const double res = y[r] - pred;
    ss_res += res * res;
    ss_tot += (y[r] - y_mean) * (y[r] - y_mean);
    max_res = std::max(max_res, std::abs(res));
  }

  ScalingFit fit;
  fit.intercept = beta[0];
  for (std::size_t j = 0; j < k; ++j) fit.slopes[regressors[j]] = beta[j + 1];
  fit.max_abs_residual = max_res;
  if (ss_tot < 1e-14) {
    // Constant response: a perfect fit only if the residuals agree too.
    fit.r_squared = ss_res < 1e-12 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  }
  return fit;
}

}  // namespace bql
