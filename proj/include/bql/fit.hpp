#pragma once

#include <map>
#include <string>
#include <vector>

namespace bql {

// One measurement in a scaling sweep: named scale parameters (e.g. h, sigma,
// lambda, mu) and the positive quantity measured at those scales.
struct SweepPoint {
  std::map<std::string, double> parameters;
  double value = 0.0;
};

// Result of a least-squares power-law fit  value ~ C * prod_i param_i^s_i,
// performed linearly in log space.
struct ScalingFit {
  std::map<std::string, double> slopes;  // fitted exponent per regressor
  double intercept = 0.0;                // fitted log C
  double r_squared = 0.0;                // coefficient of determination in [0,1]
  double max_abs_residual = 0.0;         // max |log value - prediction|
};

// Ordinary least squares on logs via the normal equations (Gaussian
// elimination with partial pivoting). Requires at least regressors+2 points
// and each regressor to span at least two dyadic octaves. Throws
// std::invalid_argument on nonpositive data, missing parameters, or too few
// points, and std::runtime_error when the regressors are collinear
// (rank-deficient design matrix).
ScalingFit power_law_fit(const std::vector<SweepPoint>& points,
                         const std::vector<std::string>& regressors);

}  // namespace bql
