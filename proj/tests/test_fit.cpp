#include "bql/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

using namespace bql;

namespace {

std::vector<double> dyadic(double first, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(first * std::pow(2.0, -i));
  return v;
}

}  // namespace

TEST_CASE("exact univariate power law is recovered to machine precision") {
  std::vector<SweepPoint> pts;
  for (double h : dyadic(1.0 / 8, 6))
    pts.push_back({{{"h", h}}, 7.0 * std::pow(h, -0.5)});
  ScalingFit fit = power_law_fit(pts, {"h"});
  CHECK(fit.slopes.at("h") == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(std::log(7.0)).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.max_abs_residual <= 1e-10);
}

TEST_CASE("constant response yields zero slope") {
  std::vector<SweepPoint> pts;
  for (double h : dyadic(1.0 / 8, 5)) pts.push_back({{{"h", h}}, 3.0});
  ScalingFit fit = power_law_fit(pts, {"h"});
  CHECK(std::abs(fit.slopes.at("h")) <= 1e-12);
  CHECK(fit.r_squared == doctest::Approx(1.0));
}

TEST_CASE("exact bivariate and trivariate laws") {
  std::vector<SweepPoint> pts2;
  for (double h : dyadic(1.0 / 4, 4))
    for (double s : dyadic(1.0 / 4, 4))
      pts2.push_back({{{"h", h}, {"sigma", s}},
                      3.0 * std::pow(h, -0.5) * std::pow(s, -0.25)});
  ScalingFit f2 = power_law_fit(pts2, {"h", "sigma"});
  CHECK(f2.slopes.at("h") == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f2.slopes.at("sigma") == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(f2.max_abs_residual <= 1e-10);

  std::vector<SweepPoint> pts3;
  for (double a : dyadic(1.0, 3))
    for (double b : dyadic(1.0, 3))
      for (double c : dyadic(1.0, 3))
        pts3.push_back({{{"a", a}, {"b", b}, {"c", c}},
                        std::pow(a, 1.5) * std::pow(b, -2.0) * std::pow(c, 0.125)});
  ScalingFit f3 = power_law_fit(pts3, {"a", "b", "c"});
  CHECK(f3.slopes.at("a") == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(f3.slopes.at("b") == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(f3.slopes.at("c") == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(f3.max_abs_residual <= 1e-10);
}

TEST_CASE("collinear regressors are rejected as rank-deficient") {
  std::vector<SweepPoint> pts;
  for (double h : dyadic(1.0 / 4, 5))
    pts.push_back({{{"h", h}, {"sigma", h * h}}, std::pow(h, -1.0)});
  CHECK_THROWS_AS(power_law_fit(pts, {"h", "sigma"}), std::runtime_error);
}

TEST_CASE("relabeling h to its reciprocal negates the slope exactly") {
  std::vector<SweepPoint> pts_h, pts_l;
  for (double h : dyadic(1.0 / 8, 6)) {
    const double v = 2.0 * std::pow(h, -0.75);
    pts_h.push_back({{{"h", h}}, v});
    pts_l.push_back({{{"lambda", 1.0 / h}}, v});
  }
  const double sh = power_law_fit(pts_h, {"h"}).slopes.at("h");
  const double sl = power_law_fit(pts_l, {"lambda"}).slopes.at("lambda");
  CHECK(std::abs(sh + sl) <= 1e-12);
}

TEST_CASE("noisy data keeps r-squared in range") {
  std::vector<SweepPoint> pts;
  int i = 0;
  for (double h : dyadic(1.0 / 2, 8))
    pts.push_back({{{"h", h}}, std::pow(h, -0.5) * (1.0 + 0.2 * ((i++ % 2) ? 1 : -1))});
  ScalingFit fit = power_law_fit(pts, {"h"});
  CHECK(fit.r_squared >= 0.0);
  CHECK(fit.r_squared <= 1.0);
  CHECK(fit.max_abs_residual > 0.0);
}

TEST_CASE("input validation") {
  std::vector<SweepPoint> few = {{{{"h", 0.5}}, 1.0}, {{{"h", 0.25}}, 2.0}};
  CHECK_THROWS_AS(power_law_fit(few, {"h"}), std::invalid_argument);

  std::vector<SweepPoint> bad_val;
  for (double h : dyadic(1.0 / 2, 4)) bad_val.push_back({{{"h", h}}, -1.0});
  CHECK_THROWS_AS(power_law_fit(bad_val, {"h"}), std::invalid_argument);

  std::vector<SweepPoint> missing;
  for (double h : dyadic(1.0 / 2, 4)) missing.push_back({{{"h", h}}, 1.0});
  CHECK_THROWS_AS(power_law_fit(missing, {"sigma"}), std::invalid_argument);

  // a regressor pinned to a narrow range cannot support a slope estimate
  std::vector<SweepPoint> narrow;
  for (int j = 0; j < 5; ++j)
    narrow.push_back({{{"h", 0.5 + 0.01 * j}}, 1.0});
  CHECK_THROWS_AS(power_law_fit(narrow, {"h"}), std::invalid_argument);
}
