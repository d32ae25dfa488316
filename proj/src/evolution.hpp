#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "sector_basis.hpp"

namespace hrlab {

// Joint (H - E0, translation) eigendecomposition of a periodic Hamiltonian,
// organized by momentum sector. Energies are stored shifted by the ground
// energy so that U(t,x) Omega = Omega holds exactly.
struct SpectralData {
  Lattice lat = Lattice::chain(2, Boundary::Periodic);
  MomentumGrid grid{lat};
  std::shared_ptr<OrbitTable> orbits;

  struct Sector {
    int k_flat;
    std::unique_ptr<SectorBasis> basis;
    std::vector<double> evals;  // ascending, shifted by E0
    CMat vecs;                  // column j = eigenvector j in sector coordinates
    bool full = true;           // all eigenpairs kept (false for band mode)
  };
  std::vector<Sector> sectors;
  double e0_raw = 0.0;
  int ground_sector = 0;

  int64_t hilbert_dim() const { return orbits ? orbits->num_states() : 0; }
  int64_t num_eigenstates() const;
  // global eigenstate index <-> (sector, column)
  std::pair<int, int> locate(int64_t g) const;
  int64_t global_index(int sec, int idx) const;
  double energy(int64_t g) const;
  int momentum_flat(int64_t g) const;
  int64_t ground_global() const { return global_index(ground_sector, 0); }

  // full 2^N computational-basis vector of eigenstate g
  std::vector<cx> materialize(int64_t g) const;
  // eigenstates in sector k with energy in [elo, ehi]
  std::vector<int64_t> in_window(int k_flat, double elo, double ehi) const;
  // sector index for a momentum flat index
  int sector_of_k(int k_flat) const;

  std::vector<int64_t> offsets;  // per-sector global offsets (built on construction)
};

// Heisenberg-picture evolution tau_t(A) = e^{iHt} A e^{-iHt} backed by a full
// eigendecomposition (dense for open boundaries, per-sector for periodic ones).
class EvolutionEngine {
 public:
  enum class Mode { Dense, Sector };

  // Full dense diagonalization; any boundary. Dimension capped (default 2^13).
  static EvolutionEngine make_dense(const Hamiltonian& h, int64_t dim_cap = int64_t{1} << 13);
  // Momentum-sector diagonalization; requires periodic boundary. Verifies
  // [H, U_T] ~ 0 before block-diagonalizing.
  static EvolutionEngine make_sectors(const Hamiltonian& h);
  // Band mode: only the lowest `per_sector` eigenpairs per sector (Lanczos).
  static EvolutionEngine make_sectors_band(const Hamiltonian& h, int per_sector);

  Mode mode() const { return mode_; }
  const Lattice& lattice() const;
  int64_t dim() const;
  double ground_energy_raw() const { return e0_raw_; }

  // v <- e^{i sign (H - E0) t} v
  void evolve_vector(std::vector<cx>& v, double t, double sign = +1.0) const;
  // y = tau_t(A) x without materializing tau_t(A); A is applied via its support
  void apply_evolved(const LocalOperator& a, double t, const cx* x, cx* y) const;
  // Dense Heisenberg evolution; result has full-lattice support. dim <= 2^12.
  LocalOperator evolve_operator(const LocalOperator& a, double t) const;

  std::vector<cx> ground_state() const;

  bool has_spectral() const { return sd_ != nullptr; }
  const SpectralData& spectral() const;
  std::shared_ptr<const SpectralData> spectral_ptr() const { return sd_; }

  // Dense eigenbasis W (columns = eigenvectors over the full space), assembled
  // on demand; only for dims <= 2^12. Eigenvalues shifted by E0 in `evals`.
  const CMat& basis_matrix() const;
  const std::vector<double>& basis_evals() const;  // shifted, matching W columns
  const std::vector<int>& basis_momenta() const;   // momentum flat index per column

  // ||H - V E V^H|| / ||H|| probe on random vectors (engine invariant).
  double reconstruction_residual(const Hamiltonian& h, int probes = 3) const;

  const Hamiltonian& hamiltonian() const { return *h_; }

 private:
  EvolutionEngine() = default;
  Mode mode_ = Mode::Dense;
  std::shared_ptr<const Hamiltonian> h_;
  double e0_raw_ = 0.0;
  // dense mode
  std::shared_ptr<HermEig> eig_;
  // sector mode
  std::shared_ptr<SpectralData> sd_;
  // materialized full eigenbasis (cache)
  mutable std::shared_ptr<CMat> wcache_;
  mutable std::shared_ptr<std::vector<double>> wevals_;
  mutable std::shared_ptr<std::vector<int>> wmomenta_;

  void to_eigen(const cx* v, cx* coeff) const;
  void from_eigen(const cx* coeff, cx* v) const;
};

// Open-boundary (or any) evolution of a vector by Krylov propagation; used where
// a full diagonalization would be wasteful. Conjugation phases cancel, so no
// ground shift is applied.
void krylov_evolve(const Hamiltonian& h, std::vector<cx>& v, double t, double sign);

}  // namespace hrlab
