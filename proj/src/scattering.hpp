#pragma once

#include "packets.hpp"
#include "smearing.hpp"

namespace hrlab {

// Application context for HR creation operators B*_t(g_t) in eigen-coordinates.
// The filtered seed block <m| tau_f(seed) |n> is cached per source state; the
// time and packet dependence enters only through scalar factors
//   sqrt(N / 2 pi) * ghat(dp) * exp(i (dE - Sigma(dp)) t),
// so sweeping t is cheap.
class HrContext {
 public:
  HrContext(EigvecCache& cache, const CreationOperator& b);

  enum class Variant {
    Plain,            // B*_t(g_t)
    OpDerivative,     // dot B*_t(g_t): extra factor i dE
    PacketDerivative  // B*_t(dot g_t): extra factor -i Sigma(dp)
  };

  SparseEigenState apply(const WavePacket& g, double t, const SparseEigenState& in,
                         Variant variant = Variant::Plain);
  // adjoint (annihilation) application: B_t(g_t) = (B*_t(g_t))^dagger
  SparseEigenState apply_adjoint(const WavePacket& g, double t, const SparseEigenState& in);

  const CreationOperator& op() const { return *b_; }
  EigvecCache& cache() { return *cache_; }

 private:
  EigvecCache* cache_;
  const CreationOperator* b_;
  // filtered seed elements: source global index -> [(target, f_hat * <m|seed|n>)]
  std::map<int64_t, std::vector<std::pair<int64_t, cx>>> block_;
  std::map<int64_t, std::vector<std::pair<int64_t, cx>>> adj_block_;
  const std::vector<std::pair<int64_t, cx>>& row(int64_t src, bool adjoint);
};

struct ParticleSpec {
  const CreationOperator* op;
  const WavePacket* packet;
};

struct ScatteringState {
  std::vector<ParticleSpec> config;
  double t = 0.0;
  SparseEigenState psi;
  double trivial_norm_bound = 0.0;       // prod ||B*|| ||g_t||_1 (recorded)
  std::vector<double> pair_comm_norms;   // ||[B*_i, B*_j] Omega|| surrogates per pair
  double min_velocity_gap = 0.0;
};

// Psi_t = B*_{1,t}(g_1,t) ... B*_{n,t}(g_n,t) Omega (right-to-left application).
// Pairwise velocity supports must be disjoint with positive margin.
ScatteringState scattering_state(std::vector<HrContext*> ops,
                                 const std::vector<const WavePacket*>& packets, double t);

struct FockReport {
  cx lhs = 0.0;          // <Psi~_t, Psi_t>
  cx permanent = 0.0;    // sum over permutations of single-particle overlaps
  double deviation = 0.0;
  double covariance_residual = 0.0;  // U(t,x)-equivariance check
  bool same_n = true;
};

FockReport fock_factorization_check(std::vector<HrContext*> ops_a,
                                    const std::vector<const WavePacket*>& pk_a,
                                    std::vector<HrContext*> ops_b,
                                    const std::vector<const WavePacket*>& pk_b, double t);

// U(t0, x0)-equivariance residual of an n-particle state at time t (exact identity
// for this construction; a stringent convention check).
double covariance_residual(std::vector<HrContext*> ops,
                           const std::vector<const WavePacket*>& packets, double t, double t0,
                           int x0);

struct SMatrixEstimate {
  std::vector<double> times;
  std::vector<cx> overlaps;        // <Psi_out(+t), Psi_in(-t)>
  std::vector<double> norm_in, norm_out;
  cx extrapolated = 0.0;           // first-order Richardson in 1/t
  double error_bar = 0.0;          // last-step change
  bool truncated = false;          // recurrence reached
  double t_recurrence = 0.0;
};

// Finite-time S-matrix element estimate; explicitly labeled as such.
SMatrixEstimate s_matrix_element(std::vector<HrContext*> in_ops,
                                 const std::vector<const WavePacket*>& in_pk,
                                 std::vector<HrContext*> out_ops,
                                 const std::vector<const WavePacket*>& out_pk,
                                 const std::vector<double>& t_grid);

// Dense materialization of B*_t(g_t) for small systems (operator-norm studies).
LocalOperator hr_operator_dense(const EvolutionEngine& eng, const CreationOperator& b,
                                const WavePacket& g, double t);

}  // namespace hrlab
