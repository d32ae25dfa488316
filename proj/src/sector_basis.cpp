#include "sector_basis.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

OrbitTable::OrbitTable(const Lattice& lat) : lat_(lat) {
  if (lat.boundary() != Boundary::Periodic)
    throw DomainError("orbit table requires a periodic lattice (translations must form a group)");
  const int ns = int(lat.num_sites());
  if (ns > 24) throw DomainError("orbit table above the 2^24 basis-state cap");
  nstates_ = int64_t{1} << ns;
  n0_ = lat.extent(0);
  n1_ = lat.dim() == 2 ? lat.extent(1) : 1;

  perm0_.resize(ns);
  perm1_.resize(ns);
  for (int i = 0; i < ns; ++i) {
    Site s = lat.index_site(i);
    perm0_[i] = lat.site_index(lat.translate_site(s, {1, 0}));
    perm1_[i] = lat.dim() == 2 ? lat.site_index(lat.translate_site(s, {0, 1})) : i;
  }

  rep_id_.assign(nstates_, -1);
  shift_.assign(nstates_, 0);
  for (int64_t s = 0; s < nstates_; ++s) {
    if (rep_id_[s] >= 0) continue;
    // walk the full translation group image of s
    int64_t rep = s;
    std::vector<std::pair<int64_t, int32_t>> orbit;  // (state, packed shift from s)
    int64_t cur0 = s;
    for (int a = 0; a < n0_; ++a) {
      int64_t cur = cur0;
      for (int b = 0; b < n1_; ++b) {
        orbit.push_back({cur, int32_t(a + b * n0_)});
        if (cur < rep) rep = cur;
        cur = translate_state(cur, 0, 1);
      }
      cur0 = translate_state(cur0, 1, 0);
    }
    const int32_t id = int32_t(reps_.size());
    reps_.push_back(rep);
    // shift stored relative to the representative; pick the first occurrence
    int32_t rep_from_s = 0;
    for (auto& [st, sh] : orbit)
      if (st == rep) {
        rep_from_s = sh;
        break;
      }
    const int ra = rep_from_s % n0_, rb = rep_from_s / n0_;
    int distinct = 0;
    std::vector<int32_t> stab;
    for (auto& [st, sh] : orbit) {
      const int a = ((sh % n0_) - ra + n0_) % n0_;
      const int b = ((sh / n0_) - rb + n1_) % n1_;
      if (rep_id_[st] < 0) {
        rep_id_[st] = id;
        ++distinct;
        shift_[st] = int32_t(a + b * n0_);
      }
      if (st == rep && (a != 0 || b != 0)) stab.push_back(int32_t(a + b * n0_));
    }
    orbit_size_.push_back(distinct);
    std::sort(stab.begin(), stab.end());
    stab.erase(std::unique(stab.begin(), stab.end()), stab.end());
    stabilizer_.push_back(std::move(stab));
  }
}

int64_t OrbitTable::translate_state(int64_t s, int steps0, int steps1) const {
  const int ns = int(lat_.num_sites());
  int64_t out = 0;
  for (int i = 0; i < ns; ++i) {
    if (!((s >> i) & 1)) continue;
    int j = i;
    for (int a = 0; a < steps0; ++a) j = perm0_[j];
    for (int b = 0; b < steps1; ++b) j = perm1_[j];
    out |= int64_t{1} << j;
  }
  return out;
}

std::pair<int, int> OrbitTable::shift(int64_t state) const {
  const int32_t sh = shift_[state];
  return {sh % n0_, sh / n0_};
}

bool OrbitTable::allowed(int32_t id, int k_flat, const MomentumGrid& grid) const {
  // chi_k must be trivial on the orbit stabilizer
  auto kk = grid.unpack(k_flat);
  for (int32_t sh : stabilizer_[id]) {
    const int a = sh % n0_, b = sh / n0_;
    // need e^{2 pi i (k0 a / n0 + k1 b / n1)} == 1
    const int num = kk[0] * a * n1_ + kk[1] * b * n0_;
    if (num % (n0_ * n1_) != 0) return false;
  }
  return true;
}

SectorBasis::SectorBasis(const OrbitTable& orbits, const MomentumGrid& grid, int k_flat)
    : orbits_(&orbits), grid_(&grid), k_(k_flat) {
  const int n0 = orbits.lattice().extent(0);
  const int n1 = orbits.lattice().dim() == 2 ? orbits.lattice().extent(1) : 1;
  auto kk = grid.unpack(k_flat);
  ph0_.resize(n0);
  ph1_.resize(n1);
  for (int a = 0; a < n0; ++a) ph0_[a] = std::exp(cx(0, 2.0 * kPi * kk[0] * a / n0));
  for (int b = 0; b < n1; ++b) ph1_[b] = std::exp(cx(0, 2.0 * kPi * kk[1] * b / n1));

  row_of_rep_.assign(orbits.num_orbits(), -1);
  for (int32_t id = 0; id < orbits.num_orbits(); ++id) {
    if (!orbits.allowed(id, k_flat, grid)) continue;
    row_of_rep_[id] = int(rows_.size());
    rows_.push_back(id);
    inv_sqrt_orb_.push_back(1.0 / std::sqrt(double(orbits.orbit_size(id))));
  }
}

cx SectorBasis::phase(int64_t state) const {
  auto [a, b] = orbits_->shift(state);
  return ph0_[a] * ph1_[b];
}

void SectorBasis::from_full(const cx* full, cx* sector) const {
  std::fill(sector, sector + rows_.size(), cx(0.0));
  const int64_t n = orbits_->num_states();
  for (int64_t s = 0; s < n; ++s) {
    const cx z = full[s];
    if (z == cx(0.0)) continue;
    const int32_t id = orbits_->rep_id(s);
    const int row = row_of_rep_[id];
    if (row < 0) continue;
    sector[row] += std::conj(phase(s)) * z * inv_sqrt_orb_[row];
  }
}

void SectorBasis::to_full(const cx* sector, cx* full) const {
  std::fill(full, full + orbits_->num_states(), cx(0.0));
  to_full_add(sector, full);
}

void SectorBasis::to_full_add(const cx* sector, cx* full) const {
  const int64_t n = orbits_->num_states();
  for (int64_t s = 0; s < n; ++s) {
    const int32_t id = orbits_->rep_id(s);
    const int row = row_of_rep_[id];
    if (row < 0) continue;
    const cx z = sector[row];
    if (z == cx(0.0)) continue;
    full[s] += phase(s) * z * inv_sqrt_orb_[row];
  }
}

CMat sector_hamiltonian(const Hamiltonian& h, const SectorBasis& basis) {
  const OrbitTable& orb = basis.orbits();
  const int dim = basis.dim();
  CMat hk(dim, dim);
  const int64_t n = orb.num_states();
  // column pass over all states grouped by orbit: H |k;r> expanded state by state
  for (int64_t s = 0; s < n; ++s) {
    const int32_t id = orb.rep_id(s);
    const int col = basis.row_of_rep(id);
    if (col < 0) continue;
    const cx cphase = basis.phase(s) / std::sqrt(double(orb.orbit_size(id)));
    h.apply_basis_state(s, [&](int64_t s2, cx amp) {
      const int32_t id2 = orb.rep_id(s2);
      const int row = basis.row_of_rep(id2);
      if (row < 0) return;
      hk.at(row, col) += std::conj(basis.phase(s2)) / std::sqrt(double(orb.orbit_size(id2))) *
                         amp * cphase;
    });
  }
  return hk;
}

void sector_apply(const Hamiltonian& h, const SectorBasis& basis, const cx* x, cx* y,
                  std::vector<cx>& fa, std::vector<cx>& fb) {
  const int64_t n = basis.orbits().num_states();
  if (int64_t(fa.size()) != n) fa.assign(n, 0.0);
  if (int64_t(fb.size()) != n) fb.assign(n, 0.0);
  basis.to_full(x, fa.data());
  h.apply(fa.data(), fb.data());
  basis.from_full(fb.data(), y);
}

}  // namespace hrlab
