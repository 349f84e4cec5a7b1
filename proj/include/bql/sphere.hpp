#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

#include "bql/quadrature.hpp"

namespace bql {

struct HarmonicIndex {
  int k = 0;  // degree
  int m = 0;  // order, |m| <= k
  void validate() const;
};

// Pole + orthonormal frame fixing a rotated Gaussian beam and its phase:
// the beam is x -> c_k (<x,a> + i <x,b>)^k, concentrated on the great circle
// orthogonal to the pole.
struct BeamFrame {
  std::array<double, 3> pole{0.0, 0.0, 1.0};
  std::array<double, 3> a{1.0, 0.0, 0.0};
  std::array<double, 3> b{0.0, 1.0, 0.0};
  void validate() const;  // {a, b, pole} orthonormal, a x b = pole, to 1e-12
};

// Beam superposition parameters: m = floor(k^(1/2-alpha)) beams with
// consecutive pole spacing d*k^(-1/2) along the equator.
struct EnsembleSpec {
  int k = 0;
  double alpha = 0.0;  // in [0, 1/2)
  double d = 0.0;      // separation constant > 0
  int beam_count() const;
  void validate() const;  // beam_count >= 1; poles fit in a quarter equator
};

// Complex samples on a sphere quadrature grid, ring-major: sample index
// i*n_theta + j holds node (mu_i, theta_j). degree_hint / theta_degree_hint
// bound the polynomial degree and the theta Fourier band for exactness
// bookkeeping.
struct SphericalField {
  std::shared_ptr<const SphereQuadrature> quad;
  std::vector<std::complex<double>> samples;
  int degree_hint = 0;
  int theta_degree_hint = 0;
};

// --- construction ---

// Samples of the orthonormal harmonic N_k^|m|(cos phi) e^{i m theta}/sqrt(2 pi).
// Requires n_mu >= k+1 and n_theta >= 2k+1 so quadratic integrands are exact.
SphericalField eval_harmonic(const HarmonicIndex& idx,
                             std::shared_ptr<const SphereQuadrature> quad);

// Zonal harmonic Z_k (order 0). Same quadrature requirements in mu; theta
// resolution may be anything since the samples are theta-independent.
SphericalField zonal(int k, std::shared_ptr<const SphereQuadrature> quad);

// log of the beam normalizer c_k = sqrt((2k+1)!! / (4 pi (2k)!!)).
double log_beam_normalizer(int k);

// Beam value c_k (<x,a> + i <x,b>)^k at a point, via log-modulus/argument.
std::complex<double> beam_value(const BeamFrame& frame, int k,
                                const std::array<double, 3>& x);

// Samples of the rotated Gaussian beam; verifies the closed-form normalizer
// against the quadrature norm to 1e-10. Requires n_mu >= k+1, n_theta >= 2k+1.
SphericalField gaussian_beam(const BeamFrame& frame, int k,
                             std::shared_ptr<const SphereQuadrature> quad);

// Equator poles centered at (0,1,0) with consecutive geodesic spacing
// d*k^(-1/2); every frame has a = north pole, b = pole x a, so all beams are
// positive real (= c_k) at the north pole.
std::vector<BeamFrame> place_poles(const EnsembleSpec& spec);

// --- measurement ---

// Hermitian Gram matrix <q_i, q_j> of fields sharing one quadrature.
std::vector<std::vector<std::complex<double>>> gram_matrix(
    const std::vector<SphericalField>& fields);

std::complex<double> inner_product(const SphericalField& f,
                                   const SphericalField& g);

// Quadrature L^p norm; p = infinity is the exact node maximum (a lower bound
// on the true sup; see refined_sup for local refinement).
double lp_norm_sphere(const SphericalField& field, double p);

// Pointwise product; exactness hints add.
SphericalField product_sphere(const SphericalField& f, const SphericalField& g);

// Local 2x grid refinement of the sup around a starting node: repeatedly
// samples a 5x5 patch and halves its radius. eval receives (mu, theta).
double refined_sup(
    const std::function<std::complex<double>(double, double)>& eval, double mu0,
    double theta0, double dmu, double dtheta, int levels = 24);

// Minimum modulus and total quadrature weight over the nodes whose Cartesian
// coordinates (x1, x2, x3) satisfy the predicate; errors below 8 nodes.
struct RegionFloor {
  double min_abs = 0.0;
  double weight = 0.0;
  std::size_t nodes = 0;
};
RegionFloor region_floor(
    const SphericalField& field,
    const std::function<bool(double, double, double)>& region);

// The coherence box S: {|x1| < eps k^-(1-2 alpha), |x2| < eps k^-(1-alpha)}.
std::function<bool(double, double, double)> region_S(int k, double alpha,
                                                     double eps);

// --- ensemble ---

struct EnsembleField {
  SphericalField v;              // normalized superposition w/||w||
  std::vector<BeamFrame> frames;
  int k = 0;
  double w_norm_sq = 0.0;        // ||w||_2^2, must land in [1/2, 2]
  double eigen_min = 0.0;        // Gram eigenvalue range of the beams
  double eigen_max = 0.0;
};

// Builds w = m^(-1/2) sum of beams on the given quadrature, after verifying
// the Gram eigenvalues lie in [1/2, 2] on an internally sized exact
// quadrature; throws std::runtime_error when the Gram check fails.
EnsembleField superpose_ensemble(const EnsembleSpec& spec,
                                 std::shared_ptr<const SphereQuadrature> quad);

// Gram eigenvalue range alone (no field construction); used for calibration
// scans and reports.
struct GramCheck {
  int k = 0;
  double alpha = 0.0;
  double d = 0.0;
  int m = 0;
  double eigen_min = 0.0;
  double eigen_max = 0.0;
  bool pass = false;
};
GramCheck gram_check(const EnsembleSpec& spec);

// Phase coherence over region nodes: the beam sum aligned to the first
// beam's phase must dominate half the modulus sum at every node.
struct CoherenceReport {
  std::size_t nodes = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;  // min of aligned-Re(sum) - 0.5*sum(|q_j|)
};
CoherenceReport phase_coherence(
    const EnsembleField& ens,
    const std::function<bool(double, double, double)>& region);

}  // namespace bql
