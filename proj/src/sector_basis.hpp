#pragma once

#include <vector>

#include "interaction.hpp"
#include "lattice.hpp"

namespace hrlab {

// Translation orbits of computational basis states on a periodic lattice.
// States are N-bit words, bit s = state of site index s; the translation T_a
// along axis a maps bit(site) to bit(site shifted by one step along a).
class OrbitTable {
 public:
  explicit OrbitTable(const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  int64_t num_states() const { return nstates_; }
  int64_t num_orbits() const { return int64_t(reps_.size()); }

  int64_t translate_state(int64_t s, int steps0, int steps1) const;

  int32_t rep_id(int64_t state) const { return rep_id_[state]; }
  // shift (a, b) with state = T_0^a T_1^b rep
  std::pair<int, int> shift(int64_t state) const;
  int64_t rep_state(int32_t id) const { return reps_[id]; }
  int orbit_size(int32_t id) const { return orbit_size_[id]; }
  // whether momentum flat-index k is compatible with the orbit's stabilizer
  bool allowed(int32_t id, int k_flat, const MomentumGrid& grid) const;

 private:
  Lattice lat_;
  int64_t nstates_;
  int n0_, n1_;
  std::vector<int> perm0_, perm1_;    // site index permutations for unit steps
  std::vector<int32_t> rep_id_;       // per state
  std::vector<int32_t> shift_;        // per state, packed a + b * n0
  std::vector<int64_t> reps_;
  std::vector<int32_t> orbit_size_;
  std::vector<std::vector<int32_t>> stabilizer_;  // packed nontrivial stabilizer shifts
};

// Momentum-sector basis: orthonormal orbit superpositions
// |k; r> = |O_r|^{-1/2} sum_{s in O_r} chi_k(g_s) |s>, chi_k(g) = e^{i p k . g}.
// The translation unitary then acts as e^{-i p} on each sector.
class SectorBasis {
 public:
  SectorBasis(const OrbitTable& orbits, const MomentumGrid& grid, int k_flat);

  int k_flat() const { return k_; }
  int dim() const { return int(rows_.size()); }
  const std::vector<int32_t>& rep_ids() const { return rows_; }

  // full 2^N vector -> sector coordinates (adjoint injection)
  void from_full(const cx* full, cx* sector) const;
  // sector coordinates -> full vector (y is overwritten)
  void to_full(const cx* sector, cx* full) const;
  // accumulate version: full += S * sector
  void to_full_add(const cx* sector, cx* full) const;

  cx phase(int64_t state) const;  // chi_k(g_state)
  int row_of_rep(int32_t rep_id) const { return row_of_rep_[rep_id]; }

  const OrbitTable& orbits() const { return *orbits_; }

 private:
  const OrbitTable* orbits_;
  const MomentumGrid* grid_;
  int k_;
  std::vector<int32_t> rows_;        // rep ids in row order
  std::vector<int32_t> row_of_rep_;  // rep id -> row or -1
  std::vector<double> inv_sqrt_orb_;
  std::vector<cx> ph0_, ph1_;        // unit phase tables per axis
};

// Dense sector block of a translation-invariant Hamiltonian.
CMat sector_hamiltonian(const Hamiltonian& h, const SectorBasis& basis);

// Matrix-free sector matvec y = (S^H H S) x.
void sector_apply(const Hamiltonian& h, const SectorBasis& basis, const cx* x, cx* y,
                  std::vector<cx>& scratch_full_a, std::vector<cx>& scratch_full_b);

}  // namespace hrlab
