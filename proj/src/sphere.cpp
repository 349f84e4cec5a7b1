#include "bql/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "bql/jacobi.hpp"
#include "bql/legendre.hpp"

namespace bql {

namespace {
constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kTwoPi = 2.0 * kPi;

double dot3(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

std::array<double, 3> cross3(const std::array<double, 3>& u,
                             const std::array<double, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

std::array<double, 3> node_xyz(const SphereQuadrature& q, std::size_t i,
                               std::size_t j) {
  const double mu = q.mu[i];
  const double s = std::sqrt(std::max(0.0, (1.0 - mu) * (1.0 + mu)));
  const double th = q.theta(j);
  return {s * std::cos(th), s * std::sin(th), mu};
}

// |z|^p for even integer p via squaring; the generic power otherwise.
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

void require_shared_quad(const SphericalField& f, const SphericalField& g,
                         const char* who) {
  if (f.quad.get() != g.quad.get() || !f.quad)
    throw std::invalid_argument(std::string(who) + ": fields must share one quadrature");
}

struct GramData {
  std::vector<std::vector<std::complex<double>>> g;
  std::vector<double> eig;
};

GramData ensemble_gram(const EnsembleSpec& spec) {
  const std::vector<BeamFrame> frames = place_poles(spec);
  auto quad = std::make_shared<const SphereQuadrature>(make_sphere_quadrature(
      std::size_t(spec.k) + 1, std::size_t(2 * spec.k) + 1));
  std::vector<SphericalField> beams;
  beams.reserve(frames.size());
  for (const BeamFrame& fr : frames) beams.push_back(gaussian_beam(fr, spec.k, quad));
  GramData data;
  data.g = gram_matrix(beams);
  data.eig = hermitian_eigenvalues(data.g);
  return data;
}

}  // namespace

void HarmonicIndex::validate() const {
  if (k < 0) throw std::invalid_argument("HarmonicIndex: degree must be >= 0");
  if (m > k || -m > k)
    throw std::invalid_argument("HarmonicIndex: order exceeds degree");
}

void BeamFrame::validate() const {
  const std::array<const std::array<double, 3>*, 3> vs = {&a, &b, &pole};
  for (const auto* v : vs)
    if (std::abs(dot3(*v, *v) - 1.0) > 1e-12)
      throw std::invalid_argument("BeamFrame: vectors must be unit length");
  if (std::abs(dot3(a, b)) > 1e-12 || std::abs(dot3(a, pole)) > 1e-12 ||
      std::abs(dot3(b, pole)) > 1e-12)
    throw std::invalid_argument("BeamFrame: vectors must be orthogonal");
  const std::array<double, 3> ab = cross3(a, b);
  for (int i = 0; i < 3; ++i)
    if (std::abs(ab[std::size_t(i)] - pole[std::size_t(i)]) > 1e-12)
      throw std::invalid_argument("BeamFrame: frame must be right-handed (a x b = pole)");
}

int EnsembleSpec::beam_count() const {
  // floor(k^(1/2-alpha)); the tiny shift keeps exact powers (e.g. 256^(1/4))
  // from dropping a beam to rounding
  return int(std::floor(std::pow(double(k), 0.5 - alpha) + 1e-9));
}

void EnsembleSpec::validate() const {
  if (k < 1) throw std::invalid_argument("EnsembleSpec: degree must be >= 1");
  if (!(alpha >= 0.0) || !(alpha < 0.5))
    throw std::invalid_argument("EnsembleSpec: alpha must lie in [0, 1/2)");
  if (!(d > 0.0)) throw std::invalid_argument("EnsembleSpec: d must be positive");
  const int m = beam_count();
  if (m < 1) throw std::invalid_argument("EnsembleSpec: no beams");
  if (!(double(m) * d / std::sqrt(double(k)) < kPi / 2.0))
    throw std::invalid_argument("EnsembleSpec: poles overflow the quarter equator");
}

SphericalField eval_harmonic(const HarmonicIndex& idx,
                             std::shared_ptr<const SphereQuadrature> quad) {
  idx.validate();
  if (!quad) throw std::invalid_argument("eval_harmonic: null quadrature");
  if (quad->n_mu() < std::size_t(idx.k) + 1)
    throw std::invalid_argument("eval_harmonic: quadrature too coarse in mu");
  if (quad->n_theta < std::size_t(2 * idx.k) + 1)
    throw std::invalid_argument("eval_harmonic: quadrature too coarse in theta");

  SphericalField f;
  f.quad = quad;
  f.degree_hint = idx.k;
  f.theta_degree_hint = std::abs(idx.m);
  f.samples.resize(quad->total_nodes());
  const double inv_sqrt2pi = 1.0 / std::sqrt(kTwoPi);
  for (std::size_t i = 0; i < quad->n_mu(); ++i) {
    const double radial = normalized_legendre(idx.k, idx.m, quad->mu[i]) * inv_sqrt2pi;
    for (std::size_t j = 0; j < quad->n_theta; ++j) {
      const double th = quad->theta(j);
      f.samples[i * quad->n_theta + j] =
          radial * std::complex<double>(std::cos(idx.m * th), std::sin(idx.m * th));
    }
  }
  return f;
}

SphericalField zonal(int k, std::shared_ptr<const SphereQuadrature> quad) {
  if (k < 0) throw std::invalid_argument("zonal: degree must be >= 0");
  if (!quad) throw std::invalid_argument("zonal: null quadrature");
  if (quad->n_mu() < std::size_t(k) + 1)
    throw std::invalid_argument("zonal: quadrature too coarse in mu");
  SphericalField f;
  f.quad = quad;
  f.degree_hint = k;
  f.theta_degree_hint = 0;
  f.samples.resize(quad->total_nodes());
  const double inv_sqrt2pi = 1.0 / std::sqrt(kTwoPi);
  for (std::size_t i = 0; i < quad->n_mu(); ++i) {
    const double v = normalized_legendre(k, 0, quad->mu[i]) * inv_sqrt2pi;
    for (std::size_t j = 0; j < quad->n_theta; ++j)
      f.samples[i * quad->n_theta + j] = v;
  }
  return f;
}

double log_beam_normalizer(int k) {
  if (k < 0) throw std::invalid_argument("log_beam_normalizer: degree must be >= 0");
  return 0.5 * (std::lgamma(2.0 * k + 2.0) - std::log(4.0 * kPi) -
                2.0 * k * std::log(2.0) - 2.0 * std::lgamma(double(k) + 1.0));
}

std::complex<double> beam_value(const BeamFrame& frame, int k,
                                const std::array<double, 3>& x) {
  const double u = dot3(x, frame.a);
  const double v = dot3(x, frame.b);
  const double r2 = u * u + v * v;
  const double logc = log_beam_normalizer(k);
  if (k == 0) return {std::exp(logc), 0.0};
  if (r2 <= 0.0) return {0.0, 0.0};
  const double mag = std::exp(logc + 0.5 * double(k) * std::log(r2));
  const double arg = double(k) * std::atan2(v, u);
  return std::polar(mag, arg);
}

SphericalField gaussian_beam(const BeamFrame& frame, int k,
                             std::shared_ptr<const SphereQuadrature> quad) {
  frame.validate();
  if (k < 0) throw std::invalid_argument("gaussian_beam: degree must be >= 0");
  if (!quad) throw std::invalid_argument("gaussian_beam: null quadrature");
  if (quad->n_mu() < std::size_t(k) + 1)
    throw std::invalid_argument("gaussian_beam: quadrature too coarse in mu");
  if (quad->n_theta < std::size_t(2 * k) + 1)
    throw std::invalid_argument("gaussian_beam: quadrature too coarse in theta");

  SphericalField f;
  f.quad = quad;
  f.degree_hint = k;
  f.theta_degree_hint = k;
  f.samples.resize(quad->total_nodes());
  for (std::size_t i = 0; i < quad->n_mu(); ++i)
    for (std::size_t j = 0; j < quad->n_theta; ++j)
      f.samples[i * quad->n_theta + j] = beam_value(frame, k, node_xyz(*quad, i, j));

  const double nrm = lp_norm_sphere(f, 2.0);
  if (std::abs(nrm - 1.0) > 1e-10)
    throw std::runtime_error("gaussian_beam: closed-form normalizer disagrees with quadrature");
  return f;
}

std::vector<BeamFrame> place_poles(const EnsembleSpec& spec) {
  spec.validate();
  const int m = spec.beam_count();
  const double step = spec.d / std::sqrt(double(spec.k));
  std::vector<BeamFrame> frames;
  frames.reserve(std::size_t(m));
  for (int j = 0; j < m; ++j) {
    const double t = kPi / 2.0 + (double(j) - 0.5 * (m - 1)) * step;
    BeamFrame fr;
    fr.pole = {std::cos(t), std::sin(t), 0.0};
    fr.a = {0.0, 0.0, 1.0};
    fr.b = cross3(fr.pole, fr.a);
    fr.validate();
    frames.push_back(fr);
  }
  return frames;
}

std::complex<double> inner_product(const SphericalField& f,
                                   const SphericalField& g) {
  require_shared_quad(f, g, "inner_product");
  const SphereQuadrature& q = *f.quad;
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i < q.n_mu(); ++i) {
    std::complex<double> ring = 0.0;
    const std::size_t base = i * q.n_theta;
    for (std::size_t j = 0; j < q.n_theta; ++j)
      ring += f.samples[base + j] * std::conj(g.samples[base + j]);
    total += ring * q.ring_weight(i);
  }
  return total;
}

std::vector<std::vector<std::complex<double>>> gram_matrix(
    const std::vector<SphericalField>& fields) {
  const std::size_t m = fields.size();
  if (m == 0) throw std::invalid_argument("gram_matrix: no fields");
  for (const SphericalField& f : fields) require_shared_quad(fields[0], f, "gram_matrix");
  std::vector<std::vector<std::complex<double>>> g(
      m, std::vector<std::complex<double>>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j) {
      g[i][j] = inner_product(fields[i], fields[j]);
      g[j][i] = std::conj(g[i][j]);
    }
  return g;
}

double lp_norm_sphere(const SphericalField& field, double p) {
  if (!field.quad) throw std::invalid_argument("lp_norm_sphere: null quadrature");
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_sphere: p must be >= 1");
  const SphereQuadrature& q = *field.quad;
  if (std::isinf(p)) {
    double mx = 0.0;
    for (const auto& z : field.samples) mx = std::max(mx, std::abs(z));
    return mx;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q.n_mu(); ++i) {
    double ring = 0.0;
    const std::size_t base = i * q.n_theta;
    for (std::size_t j = 0; j < q.n_theta; ++j)
      ring += abs_pow(std::norm(field.samples[base + j]), p);
    total += ring * q.ring_weight(i);
  }
  return std::pow(total, 1.0 / p);
}

SphericalField product_sphere(const SphericalField& f, const SphericalField& g) {
  require_shared_quad(f, g, "product_sphere");
  SphericalField out = f;
  for (std::size_t i = 0; i < out.samples.size(); ++i) out.samples[i] *= g.samples[i];
  out.degree_hint = f.degree_hint + g.degree_hint;
  out.theta_degree_hint = f.theta_degree_hint + g.theta_degree_hint;
  return out;
}

double refined_sup(
    const std::function<std::complex<double>(double, double)>& eval, double mu0,
    double theta0, double dmu, double dtheta, int levels) {
  double best = std::abs(eval(mu0, theta0));
  double cm = mu0, ct = theta0, rm = dmu, rt = dtheta;
  for (int lvl = 0; lvl < levels; ++lvl) {
    double lm = cm, lt = ct;
    for (int i = -2; i <= 2; ++i) {
      const double mu = std::clamp(cm + 0.5 * rm * i, -1.0, 1.0);
      for (int j = -2; j <= 2; ++j) {
        const double th = ct + 0.5 * rt * j;
        const double v = std::abs(eval(mu, th));
        if (v > best) {
          best = v;
          lm = mu;
          lt = th;
        }
      }
    }
    cm = lm;
    ct = lt;
    rm *= 0.5;
    rt *= 0.5;
  }
  return best;
}

RegionFloor region_floor(
    const SphericalField& field,
    const std::function<bool(double, double, double)>& region) {
  if (!field.quad) throw std::invalid_argument("region_floor: null quadrature");
  const SphereQuadrature& q = *field.quad;
  RegionFloor out;
  out.min_abs = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.n_mu(); ++i)
    for (std::size_t j = 0; j < q.n_theta; ++j) {
      const std::array<double, 3> x = node_xyz(q, i, j);
      if (!region(x[0], x[1], x[2])) continue;
      out.min_abs = std::min(out.min_abs, std::abs(field.samples[i * q.n_theta + j]));
      out.weight += q.ring_weight(i);
      ++out.nodes;
    }
  if (out.nodes < 8)
    throw std::invalid_argument(
        "region_floor: region resolves fewer than 8 quadrature nodes; refine the quadrature");
  return out;
}

std::function<bool(double, double, double)> region_S(int k, double alpha,
                                                     double eps) {
  const double w1 = eps * std::pow(double(k), -(1.0 - 2.0 * alpha));
  const double w2 = eps * std::pow(double(k), -(1.0 - alpha));
  return [w1, w2](double x1, double x2, double) {
    return std::abs(x1) < w1 && std::abs(x2) < w2;
  };
}

GramCheck gram_check(const EnsembleSpec& spec) {
  spec.validate();
  const GramData data = ensemble_gram(spec);
  GramCheck out;
  out.k = spec.k;
  out.alpha = spec.alpha;
  out.d = spec.d;
  out.m = spec.beam_count();
  out.eigen_min = data.eig.front();
  out.eigen_max = data.eig.back();
  out.pass = out.eigen_min >= 0.5 && out.eigen_max <= 2.0;
  return out;
}

EnsembleField superpose_ensemble(const EnsembleSpec& spec,
                                 std::shared_ptr<const SphereQuadrature> quad) {
  spec.validate();
  if (!quad) throw std::invalid_argument("superpose_ensemble: null quadrature");
  if (quad->n_mu() < std::size_t(spec.k) + 1 ||
      quad->n_theta < std::size_t(2 * spec.k) + 1)
    throw std::invalid_argument("superpose_ensemble: quadrature too coarse");

  const GramData gram = ensemble_gram(spec);
  const double eig_min = gram.eig.front(), eig_max = gram.eig.back();
  if (!(eig_min >= 0.5 && eig_max <= 2.0))
    throw std::runtime_error("superpose_ensemble: Gram eigenvalues escape [1/2, 2]");

  const std::vector<BeamFrame> frames = place_poles(spec);
  const int m = spec.beam_count();
  const double scale = 1.0 / std::sqrt(double(m));

  EnsembleField ens;
  ens.frames = frames;
  ens.k = spec.k;
  ens.eigen_min = eig_min;
  ens.eigen_max = eig_max;
  ens.v.quad = quad;
  ens.v.degree_hint = spec.k;
  ens.v.theta_degree_hint = spec.k;
  ens.v.samples.assign(quad->total_nodes(), {0.0, 0.0});
  for (std::size_t i = 0; i < quad->n_mu(); ++i)
    for (std::size_t j = 0; j < quad->n_theta; ++j) {
      const std::array<double, 3> x = node_xyz(*quad, i, j);
      std::complex<double> s = 0.0;
      for (const BeamFrame& fr : frames) s += beam_value(fr, spec.k, x);
      ens.v.samples[i * quad->n_theta + j] = scale * s;
    }

  const double w2 = lp_norm_sphere(ens.v, 2.0);
  ens.w_norm_sq = w2 * w2;
  // the quadrature norm must reproduce (1/m) <G 1, 1> from the Gram matrix
  std::complex<double> gsum = 0.0;
  for (const auto& row : gram.g)
    for (const auto& z : row) gsum += z;
  const double predicted = gsum.real() / double(m);
  if (std::abs(ens.w_norm_sq - predicted) > 1e-8 * std::max(1.0, predicted))
    throw std::runtime_error("superpose_ensemble: norm disagrees with the Gram matrix");
  if (!(ens.w_norm_sq >= 0.5 - 1e-9 && ens.w_norm_sq <= 2.0 + 1e-9))
    throw std::runtime_error("superpose_ensemble: ||w||^2 escapes [1/2, 2]");

  const double inv = 1.0 / w2;
  for (auto& z : ens.v.samples) z *= inv;
  return ens;
}

CoherenceReport phase_coherence(
    const EnsembleField& ens,
    const std::function<bool(double, double, double)>& region) {
  if (!ens.v.quad) throw std::invalid_argument("phase_coherence: null quadrature");
  const SphereQuadrature& q = *ens.v.quad;
  CoherenceReport rep;
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < q.n_mu(); ++i)
    for (std::size_t j = 0; j < q.n_theta; ++j) {
      const std::array<double, 3> x = node_xyz(q, i, j);
      if (!region(x[0], x[1], x[2])) continue;
      std::complex<double> sum = 0.0;
      double amps = 0.0;
      std::complex<double> first = 0.0;
      for (std::size_t b = 0; b < ens.frames.size(); ++b) {
        const std::complex<double> qb = beam_value(ens.frames[b], ens.k, x);
        if (b == 0) first = qb;
        sum += qb;
        amps += std::abs(qb);
      }
      if (amps == 0.0) continue;
      const double aligned =
          (std::abs(first) > 0.0)
              ? (sum * std::conj(first / std::abs(first))).real()
              : std::abs(sum);
      const double margin = aligned - 0.5 * amps;
      ++rep.nodes;
      if (margin < 0.0) ++rep.violations;
      rep.min_margin = std::min(rep.min_margin, margin);
    }
  return rep;
}

}  // namespace bql
