#pragma once

#include <map>

#include "filters.hpp"
#include "joint_spectrum.hpp"
#include "local_operator.hpp"

namespace hrlab {

// --- eigenbasis filter (primary implementation) ---------------------------------
//
// In the joint (H - E0, U_T) eigenbasis the smearing operation acts by
// multiplying matrix elements with f_hat evaluated at the energy-momentum
// transfer: <m| tau_f(A) |n> = f_hat(E_m - E_n, p_m - p_n) <m|A|n>.
LocalOperator smear(const LocalOperator& a, const FilterFunction& f, const EvolutionEngine& eng);

// --- direct quadrature (alternate implementation, cross-validation) -------------
struct QuadratureReport {
  double time_cutoff = 0.0;       // effective support [-T, T]
  double tail_estimate = 0.0;     // operator-norm bound on the truncated tail
  int nodes = 0;
};
// Gauss-Legendre in t over the effective support of the filter's time profile,
// exact lattice sum in x. Throws NumericalError when the truncation estimate
// exceeds `tol`. d = 1 only.
LocalOperator smear_quadrature(const LocalOperator& a, const FilterFunction& f,
                               const EvolutionEngine& eng, double tol,
                               QuadratureReport* report = nullptr);

// --- Arveson spectrum / energy-momentum transfer ---------------------------------
struct ArvesonBin {
  int64_t de_bin;  // de = de_bin * resolution
  int dp_flat;
  double weight;   // max matrix-element magnitude in the bin
};
struct ArvesonEstimate {
  std::vector<ArvesonBin> bins;  // sorted by (de_bin, dp_flat)
  double resolution = 0.0;
  double threshold = 0.0;        // absolute threshold used
  bool covers_all_dp(int num_dp) const;  // spatial marginal covers the whole grid
  ArvesonEstimate negated() const;
  bool same_bins(const ArvesonEstimate& o) const;
};

// Bins the transfers (E_m - E_n, p_m - p_n) carrying matrix elements above
// threshold_rel * ||a||. Energy resolution: 1e-3 * spectral range.
ArvesonEstimate arveson_spectrum(const LocalOperator& a, const EvolutionEngine& eng,
                                 double threshold_rel = 1e-8);

struct EmTransferReport {
  double residual = 0.0;   // ||(1 - P(closure(Delta + Sp_a tau))) a P(Delta)||
  int64_t delta_size = 0;
  int64_t allowed = 0;     // states in the Minkowski-sum target set
  bool pass = false;
};
// Projector identity test with P built from stored eigenprojections; Delta is a
// set of global eigenstate indices, the Minkowski sum is computed on bins.
EmTransferReport em_transfer_check(const LocalOperator& a, const EvolutionEngine& eng,
                                   const std::vector<int64_t>& delta, double tol = 1e-10);

// --- almost locality -------------------------------------------------------------
struct AlmostLocalityProfile {
  std::vector<int> radii;
  std::vector<double> deviation;  // ||A - Pi_{Z^r}(A)||
};
AlmostLocalityProfile almost_locality_profile(const LocalOperator& a_full, const Site& center,
                                              const std::vector<int>& radii);

// --- harmonic bound ---------------------------------------------------------------
struct HarmonicReport {
  double lhs = 0.0;          // ||P(Delta) sum_x tau_x(a^dagger a) P(Delta)||
  double comm_sum = 0.0;     // sum over displacements of ||[a^dagger, tau_x(a)]||
  double c_used = 0.0;
  bool pass = false;         // lhs <= c_used * comm_sum
};
// Precondition: Sp_a tau sits in (-infty, 0) x momentum torus (annihilation type).
HarmonicReport harmonic_bound_check(const LocalOperator& a, const EvolutionEngine& eng,
                                    const std::vector<int64_t>& delta, double c_fitted);

// --- sparse states in eigen-coordinates and restricted filter application --------
struct SparseEigenState {
  std::vector<std::pair<int64_t, cx>> amp;  // (global eigenstate index, amplitude)

  double norm() const;
  void scale(cx s);
  void prune(double floor);
};
cx overlap(const SparseEigenState& x, const SparseEigenState& y);  // <x|y>

// Cache of materialized eigenvectors (full 2^N vectors), keyed by global index.
class EigvecCache {
 public:
  explicit EigvecCache(std::shared_ptr<const SpectralData> sd) : sd_(std::move(sd)) {}
  const std::vector<cx>& get(int64_t g);
  const SpectralData& data() const { return *sd_; }

 private:
  std::shared_ptr<const SpectralData> sd_;
  std::map<int64_t, std::vector<cx>> cache_;
};

// out = tau_f(seed) |in>, computed only on eigenstates reachable through the
// filter window (the compact support makes the restriction exact).
SparseEigenState apply_filtered(EigvecCache& cache, const LocalOperator& seed,
                                const FilterFunction& f, const SparseEigenState& in,
                                double amp_floor = 1e-14);

// --- HR creation operators --------------------------------------------------------
struct CreationOperator {
  LocalOperator seed;      // the local seed A^*
  FilterFunction filter;   // compact window around (Sigma(p0), p0)
  int p0_flat = 0;
  double we = 0.0, wp = 0.0;

  // diagnostics filled by make_creation_operator
  double annihilates_vacuum = 0.0;  // ||B Omega||
  double creates_norm = 0.0;        // ||B* Omega||
  std::vector<int64_t> window_states;
};

// Validates that the window [Sigma(p0) +- we] x [p0 +- wp] meets Sp U only inside
// the shell (domain error listing offenders otherwise), then builds the smeared
// creation operator and its diagnostics.
CreationOperator make_creation_operator(const LocalOperator& seed, const MassShell& shell,
                                        const JointSpectrum& js, EigvecCache& cache,
                                        int p0_flat, double we, double wp);

// Density check (battery of seeds spanning the windowed shell sector): largest
// residual of projecting the window states onto span{B_i^* Omega}.
double creation_density_residual(const std::vector<CreationOperator>& battery,
                                 const JointSpectrum& js, EigvecCache& cache);

}  // namespace hrlab
