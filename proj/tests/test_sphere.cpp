#include <cmath>
#include <complex>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bql/jacobi.hpp"
#include "bql/legendre.hpp"
#include "bql/quadrature.hpp"
#include "bql/sphere.hpp"
#include "doctest.h"

using namespace bql;

namespace {
constexpr double kPi = 3.14159265358979323846264338328;

std::shared_ptr<const SphereQuadrature> make_quad(std::size_t n_mu,
                                                  std::size_t n_theta) {
  return std::make_shared<const SphereQuadrature>(
      make_sphere_quadrature(n_mu, n_theta));
}
}  // namespace

TEST_CASE("gauss-legendre integrates monomials exactly") {
  for (std::size_t n : {1u, 2u, 3u, 8u, 33u}) {
    std::vector<double> x, w;
    gauss_legendre(n, x, w);
    REQUIRE(x.size() == n);
    for (std::size_t j = 0; j + 1 < n; ++j) CHECK(x[j] < x[j + 1]);
    for (std::size_t deg = 0; deg <= 2 * n - 1; ++deg) {
      double got = 0.0;
      for (std::size_t i = 0; i < n; ++i) got += w[i] * std::pow(x[i], double(deg));
      const double expected = (deg % 2 == 0) ? 2.0 / (deg + 1.0) : 0.0;
      CHECK(std::abs(got - expected) < 1e-13);
    }
  }
  std::vector<double> x, w;
  gauss_legendre(2, x, w);
  CHECK(x[0] == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("sphere quadrature has total weight 4*pi") {
  for (auto [nm, nt] : {std::pair<std::size_t, std::size_t>{5, 7},
                        {33, 64}, {100, 3}}) {
    const SphereQuadrature q = make_sphere_quadrature(nm, nt);
    double total = 0.0;
    for (std::size_t i = 0; i < q.n_mu(); ++i) total += q.ring_weight(i) * double(nt);
    CHECK(std::abs(total - 4.0 * kPi) < 1e-12);
    CHECK(q.theta(0) == 0.0);
    CHECK(q.theta(1) == doctest::Approx(2.0 * kPi / double(nt)).epsilon(1e-15));
  }
}

TEST_CASE("normalized legendre matches closed forms at low degree") {
  // N_0^0 = 1/sqrt(2); N_1^0 = x sqrt(3/2); N_1^1 = -sqrt(3)/2 sqrt(1-x^2)
  // (Condon-Shortley); N_2^2 = sqrt(15)/4 (1-x^2)
  for (double x : {-0.9, -0.3, 0.0, 0.25, 0.99}) {
    CHECK(normalized_legendre(0, 0, x) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(normalized_legendre(1, 0, x) ==
          doctest::Approx(x * std::sqrt(1.5)).epsilon(1e-14));
    CHECK(normalized_legendre(1, 1, x) ==
          doctest::Approx(-0.5 * std::sqrt(3.0) * std::sqrt(1.0 - x * x))
              .epsilon(1e-14));
    CHECK(normalized_legendre(2, 2, x) ==
          doctest::Approx(0.25 * std::sqrt(15.0) * (1.0 - x * x)).epsilon(1e-14));
    CHECK(normalized_legendre(2, -2, x) == normalized_legendre(2, 2, x));
  }
  CHECK_THROWS_AS(normalized_legendre(3, 4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(normalized_legendre(3, 1, 1.5), std::invalid_argument);
}

TEST_CASE("normalized legendre endpoint values and unit norms") {
  // at x = 1 the order-0 functions hit sqrt((2k+1)/2)
  for (int k : {0, 1, 5, 32, 64})
    CHECK(normalized_legendre(k, 0, 1.0) ==
          doctest::Approx(std::sqrt((2.0 * k + 1.0) / 2.0)).epsilon(1e-12));
  // quadrature norm = 1 for a spread of (k, m)
  std::vector<double> x, w;
  gauss_legendre(201, x, w);
  for (auto [k, m] : {std::pair<int, int>{50, 0}, {50, 25}, {50, 50}, {200, 100}}) {
    double nrm = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double v = normalized_legendre(k, m, x[i]);
      nrm += w[i] * v * v;
    }
    CHECK(std::abs(nrm - 1.0) < 1e-10);
  }
  // orthogonality across degrees at fixed order
  double dot = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    dot += w[i] * normalized_legendre(50, 25, x[i]) * normalized_legendre(52, 25, x[i]);
  CHECK(std::abs(dot) < 1e-10);
  // sequence agrees with single evaluations
  const auto seq = normalized_legendre_sequence(40, 7, 0.3);
  REQUIRE(seq.size() == 34);
  for (int k = 7; k <= 40; ++k)
    CHECK(seq[std::size_t(k - 7)] ==
          doctest::Approx(normalized_legendre(k, 7, 0.3)).epsilon(1e-13));
}

TEST_CASE("sectoral profile is a pure power of sin(phi)") {
  const int k = 64;
  const double ref = std::log(std::abs(normalized_legendre(k, k, 0.0)));
  for (double mu : {0.2, 0.5, 0.8}) {
    const double lg = std::log(std::abs(normalized_legendre(k, k, mu))) -
                      0.5 * k * std::log1p(-mu * mu);
    CHECK(lg == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("harmonics through degree 20 are orthonormal") {
  auto quad = make_quad(21, 41);
  std::vector<SphericalField> fields;
  for (int k = 0; k <= 20; ++k)
    for (int m = -k; m <= k; ++m)
      fields.push_back(eval_harmonic({k, m}, quad));
  const auto g = gram_matrix(fields);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const double target = (i == j) ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(g[i][j] - std::complex<double>(target)));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("zonal field matches the order-zero harmonic and its pole value") {
  auto quad = make_quad(40, 81);
  const SphericalField z = zonal(32, quad);
  const SphericalField y = eval_harmonic({32, 0}, quad);
  double worst = 0.0;
  for (std::size_t i = 0; i < z.samples.size(); ++i)
    worst = std::max(worst, std::abs(z.samples[i] - y.samples[i]));
  CHECK(worst == 0.0);
  CHECK(lp_norm_sphere(z, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  // sup refinement converges to the closed-form pole value sqrt((2k+1)/4 pi)
  const double pole = std::sqrt(65.0 / (4.0 * kPi));
  const double mu0 = quad->mu.back();
  const double sup = refined_sup(
      [](double mu, double) {
        return std::complex<double>(
            normalized_legendre(32, 0, mu) / std::sqrt(2.0 * kPi), 0.0);
      },
      mu0, 0.0, 1.0 - mu0, 0.0, 40);
  CHECK(sup == doctest::Approx(pole).epsilon(1e-8));
}

TEST_CASE("quadrature sizing requirements are enforced") {
  CHECK_THROWS_AS(eval_harmonic({8, 3}, make_quad(8, 17)), std::invalid_argument);
  CHECK_THROWS_AS(eval_harmonic({8, 3}, make_quad(9, 16)), std::invalid_argument);
  CHECK_NOTHROW(eval_harmonic({8, 3}, make_quad(9, 17)));
  CHECK_NOTHROW(zonal(8, make_quad(9, 4)));
  CHECK_THROWS_AS(zonal(8, make_quad(8, 4)), std::invalid_argument);
  BeamFrame id;
  CHECK_THROWS_AS(gaussian_beam(id, 8, make_quad(9, 16)), std::invalid_argument);
}

TEST_CASE("beam normalizer closed forms") {
  CHECK(std::exp(log_beam_normalizer(0)) ==
        doctest::Approx(std::sqrt(1.0 / (4.0 * kPi))).epsilon(1e-14));
  CHECK(std::exp(log_beam_normalizer(1)) ==
        doctest::Approx(std::sqrt(3.0 / (8.0 * kPi))).epsilon(1e-14));
  // c_k^2 = (2k+1)!! / (4 pi (2k)!!): ratio c_{k+1}^2/c_k^2 = (2k+3)/(2k+2)
  for (int k : {1, 7, 100})
    CHECK(2.0 * (log_beam_normalizer(k + 1) - log_beam_normalizer(k)) ==
          doctest::Approx(std::log((2.0 * k + 3.0) / (2.0 * k + 2.0)))
              .epsilon(1e-12));
}

TEST_CASE("gaussian beam is the sectoral harmonic in the identity frame") {
  const int k = 48;
  auto quad = make_quad(49, 97);
  const BeamFrame id;
  const SphericalField q = gaussian_beam(id, k, quad);
  const SphericalField y = eval_harmonic({k, k}, quad);
  CHECK(std::abs(inner_product(q, q) - std::complex<double>(1.0)) < 1e-12);
  // proportional with a unimodular constant
  CHECK(std::abs(inner_product(q, y)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("beam frames are validated") {
  BeamFrame bad;
  bad.a = {0.0, 1.0, 0.0};
  bad.b = {1.0, 0.0, 0.0};  // left-handed
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = BeamFrame{};
  bad.a = {0.9, 0.0, 0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = BeamFrame{};
  bad.b = {std::sqrt(0.5), std::sqrt(0.5), 0.0};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  CHECK_NOTHROW(BeamFrame{}.validate());
}

TEST_CASE("beam value underflow and degenerate point") {
  const BeamFrame id;
  // on the beam axis the value vanishes for k >= 1
  CHECK(beam_value(id, 5, {0.0, 0.0, 1.0}) == std::complex<double>(0.0, 0.0));
  // far in the forbidden zone at large degree: underflows cleanly to 0
  const double tiny = std::abs(beam_value(id, 4096, {1e-3, 0.0, std::sqrt(1.0 - 1e-6)}));
  CHECK(tiny == 0.0);
  // k = 0 is the constant sqrt(1/4pi) everywhere
  CHECK(std::abs(beam_value(id, 0, {0.0, 0.0, 1.0}) -
                 std::complex<double>(std::sqrt(1.0 / (4.0 * kPi)))) < 1e-15);
}

TEST_CASE("pole placement geometry") {
  // single beam sits at (0,1,0) with b = (1,0,0)
  EnsembleSpec one{4, 0.49, 1.0};
  REQUIRE(one.beam_count() == 1);
  const auto f1 = place_poles(one);
  CHECK(std::abs(f1[0].pole[0]) < 1e-15);
  CHECK(f1[0].pole[1] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f1[0].a[2] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f1[0].b[0] == doctest::Approx(1.0).epsilon(1e-15));

  // m beams: symmetric about the mid-equator point, spacing d/sqrt(k)
  EnsembleSpec spec{100, 0.25, 3.0};
  REQUIRE(spec.beam_count() == 3);
  const auto frames = place_poles(spec);
  const double step = 3.0 / 10.0;
  for (std::size_t j = 0; j + 1 < frames.size(); ++j) {
    const double c = frames[j].pole[0] * frames[j + 1].pole[0] +
                     frames[j].pole[1] * frames[j + 1].pole[1];
    CHECK(std::acos(c) == doctest::Approx(step).epsilon(1e-12));
  }
  // every placed beam is the positive constant c_k at the north pole
  for (const BeamFrame& fr : frames) {
    const std::complex<double> v = beam_value(fr, spec.k, {0.0, 0.0, 1.0});
    CHECK(v.real() == doctest::Approx(std::exp(log_beam_normalizer(spec.k))).epsilon(1e-13));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
  // exact-power degrees keep all their beams
  CHECK(EnsembleSpec{256, 0.25, 3.0}.beam_count() == 4);
  CHECK(EnsembleSpec{1024, 0.25, 3.0}.beam_count() == 5);
  CHECK_THROWS_AS((EnsembleSpec{100, 0.25, 6.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((EnsembleSpec{100, 0.6, 1.0}.validate()), std::invalid_argument);
}

TEST_CASE("gram couplings follow the closed form cos^(2k)(dt/2)") {
  EnsembleSpec spec{64, 0.25, 3.0};
  REQUIRE(spec.beam_count() == 2);
  auto quad = make_quad(65, 129);
  const auto frames = place_poles(spec);
  std::vector<SphericalField> beams{gaussian_beam(frames[0], spec.k, quad),
                                    gaussian_beam(frames[1], spec.k, quad)};
  const auto g = gram_matrix(beams);
  const double dt = 3.0 / 8.0;
  const double expected = std::pow(std::cos(0.5 * dt), 2.0 * spec.k);
  CHECK(g[0][0].real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(g[0][1].real() == doctest::Approx(expected).epsilon(1e-10));
  CHECK(std::abs(g[0][1].imag()) < 1e-12);
  CHECK(std::abs(g[0][1] - std::conj(g[1][0])) < 1e-15);
}

TEST_CASE("jacobi eigenvalues on known spectra") {
  // tridiagonal [[2,1,0],[1,2,1],[0,1,2]] has eigenvalues 2 -+ sqrt(2), 2
  std::vector<std::vector<double>> a = {{2, 1, 0}, {1, 2, 1}, {0, 1, 2}};
  const auto e = jacobi_eigenvalues(a);
  REQUIRE(e.size() == 3);
  CHECK(e[0] == doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e[2] == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));

  using cd = std::complex<double>;
  std::vector<std::vector<cd>> h = {{cd(2, 0), cd(0, 1)}, {cd(0, -1), cd(2, 0)}};
  const auto he = hermitian_eigenvalues(h);
  REQUIRE(he.size() == 2);
  CHECK(he[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(he[1] == doctest::Approx(3.0).epsilon(1e-12));

  std::vector<std::vector<cd>> h2 = {{cd(1, 0), cd(1, -1)}, {cd(1, 1), cd(0, 0)}};
  const auto he2 = hermitian_eigenvalues(h2);
  CHECK(he2[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(he2[1] == doctest::Approx(2.0).epsilon(1e-12));

  std::vector<std::vector<cd>> bad = {{cd(1, 0), cd(1, 0)}, {cd(2, 0), cd(0, 0)}};
  CHECK_THROWS_AS(hermitian_eigenvalues(bad), std::invalid_argument);
}

TEST_CASE("degenerate gram spectra") {
  auto quad = make_quad(33, 65);
  const BeamFrame id;
  const SphericalField q = gaussian_beam(id, 32, quad);
  const auto e1 = hermitian_eigenvalues(gram_matrix({q}));
  CHECK(e1[0] == doctest::Approx(1.0).epsilon(1e-12));
  // two identical beams: rank-one doubled spectrum {0, 2}
  const auto e2 = hermitian_eigenvalues(gram_matrix({q, q}));
  CHECK(std::abs(e2[0]) < 1e-12);
  CHECK(e2[1] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("gram check passes at the calibrated separation and fails when crowded") {
  const GramCheck good = gram_check({256, 0.25, 3.0});
  CHECK(good.m == 4);
  CHECK(good.pass);
  CHECK(good.eigen_min >= 0.5);
  CHECK(good.eigen_max <= 2.0);
  // cutting the separation floods the off-diagonal mass
  const GramCheck bad = gram_check({256, 0.25, 1.2});
  CHECK_FALSE(bad.pass);
  CHECK(bad.eigen_max > 2.0);
}

TEST_CASE("single-beam ensemble reduces to the beam itself") {
  EnsembleSpec spec{32, 0.49, 1.0};
  REQUIRE(spec.beam_count() == 1);
  auto quad = make_quad(33, 65);
  const EnsembleField ens = superpose_ensemble(spec, quad);
  CHECK(ens.w_norm_sq == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(ens.eigen_min == doctest::Approx(1.0).epsilon(1e-10));
  const SphericalField q = gaussian_beam(place_poles(spec)[0], spec.k, quad);
  double worst = 0.0;
  for (std::size_t i = 0; i < q.samples.size(); ++i)
    worst = std::max(worst, std::abs(q.samples[i] - ens.v.samples[i]));
  CHECK(worst < 1e-12);
}

TEST_CASE("two-beam ensemble: norm matches the gram prediction") {
  EnsembleSpec spec{64, 0.25, 3.0};
  auto quad = make_quad(65, 129);
  const EnsembleField ens = superpose_ensemble(spec, quad);
  const double coupling = std::pow(std::cos(0.5 * 3.0 / 8.0), 2.0 * 64);
  CHECK(ens.w_norm_sq == doctest::Approx(1.0 + coupling).epsilon(1e-9));
  CHECK(lp_norm_sphere(ens.v, 2.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ens.eigen_min == doctest::Approx(1.0 - coupling).epsilon(1e-8));
  CHECK(ens.eigen_max == doctest::Approx(1.0 + coupling).epsilon(1e-8));
}

TEST_CASE("region floor on the polar cap of a zonal harmonic") {
  const int k = 64;
  auto quad = make_quad(4096, 8);
  const SphericalField z = zonal(k, quad);
  const double cap = 0.05 / double(k);  // polar angle bound
  const double mu_min = std::cos(cap);
  const RegionFloor fl =
      region_floor(z, [mu_min](double, double, double x3) { return x3 > mu_min; });
  CHECK(fl.nodes >= 8);
  CHECK(fl.weight > 0.0);
  CHECK(fl.min_abs >= 0.95 * std::sqrt((2.0 * k + 1.0) / (4.0 * kPi)));
  // empty regions refuse to report a floor
  CHECK_THROWS_AS(
      region_floor(z, [](double, double, double) { return false; }),
      std::invalid_argument);
}

TEST_CASE("ensemble floor and phase coherence on the box S") {
  EnsembleSpec spec{256, 0.25, 3.0};
  auto quad = make_quad(6144, 513);
  const EnsembleField ens = superpose_ensemble(spec, quad);
  const auto region = region_S(spec.k, spec.alpha, 0.05);
  const RegionFloor fl = region_floor(ens.v, region);
  CHECK(fl.nodes >= 8);
  // amplitude law: floor exceeds a fixed multiple of k^((1-alpha)/2)
  CHECK(fl.min_abs >= 0.1 * std::pow(double(spec.k), 0.375));
  const CoherenceReport rep = phase_coherence(ens, region);
  CHECK(rep.nodes == fl.nodes);
  CHECK(rep.violations == 0);
  CHECK(rep.min_margin > 0.0);
}

TEST_CASE("lp norms on the sphere") {
  auto quad = make_quad(33, 65);
  const SphericalField z = zonal(16, quad);
  CHECK_THROWS_AS(lp_norm_sphere(z, 0.5), std::invalid_argument);
  // constant field: every norm is |c| (4 pi)^(1/p)
  SphericalField c = zonal(0, quad);
  const double c0 = 1.0 / std::sqrt(4.0 * kPi);
  CHECK(lp_norm_sphere(c, 4.0) ==
        doctest::Approx(c0 * std::pow(4.0 * kPi, 0.25)).epsilon(1e-12));
  // the node max lower-bounds the sup and approaches it once a node sits
  // near the pole
  const double pole16 = std::sqrt((2.0 * 16 + 1.0) / (4.0 * kPi));
  CHECK(lp_norm_sphere(z, std::numeric_limits<double>::infinity()) <= pole16);
  const SphericalField zf = zonal(16, make_quad(513, 4));
  const double inf = lp_norm_sphere(zf, std::numeric_limits<double>::infinity());
  CHECK(inf <= pole16);
  CHECK(inf > 0.99 * pole16);
  // product: |Z_k|^2 integrates to the squared 4-norm of Z_k
  const SphericalField zz = product_sphere(z, z);
  CHECK(zz.degree_hint == 32);
  const double n2 = lp_norm_sphere(zz, 2.0);
  CHECK(n2 == doctest::Approx(std::pow(lp_norm_sphere(z, 4.0), 2.0)).epsilon(1e-12));
  // mismatched quadratures refuse to combine
  auto quad2 = make_quad(33, 65);
  const SphericalField other = zonal(16, quad2);
  CHECK_THROWS_AS(product_sphere(z, other), std::invalid_argument);
  CHECK_THROWS_AS(inner_product(z, other), std::invalid_argument);
}

TEST_CASE("pair norms are stable under quadrature refinement") {
  // ||Z_k Z_k||_2 computed on the minimal exact grid agrees with a 4x finer one
  const int k = 64;
  auto coarse = make_quad(2 * std::size_t(k) + 1, 4);
  auto fine = make_quad(8 * std::size_t(k) + 5, 16);
  const double a = lp_norm_sphere(product_sphere(zonal(k, coarse), zonal(k, coarse)), 2.0);
  const double b = lp_norm_sphere(product_sphere(zonal(k, fine), zonal(k, fine)), 2.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-8));
}
