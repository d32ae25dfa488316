#include "scattering.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

HrContext::HrContext(EigvecCache& cache, const CreationOperator& b) : cache_(&cache), b_(&b) {}

const std::vector<std::pair<int64_t, cx>>& HrContext::row(int64_t src, bool adjoint) {
  auto& store = adjoint ? adj_block_ : block_;
  auto it = store.find(src);
  if (it != store.end()) return it->second;

  const SpectralData& sd = cache_->data();
  const MomentumGrid& grid = sd.grid;
  SparseEigenState unit;
  unit.amp = {{src, 1.0}};
  const LocalOperator seed = adjoint ? b_->seed.adjoint() : b_->seed;
  const FilterFunction f = adjoint ? b_->filter.reflected() : b_->filter;
  SparseEigenState out = apply_filtered(*cache_, seed, f, unit, 1e-16);
  (void)grid;
  return store.emplace(src, std::move(out.amp)).first->second;
}

SparseEigenState HrContext::apply(const WavePacket& g, double t, const SparseEigenState& in,
                                  Variant variant) {
  const SpectralData& sd = cache_->data();
  const int n = int(sd.grid.num_points());
  if (g.m != n) throw DomainError("HR application needs the packet on the physical grid");
  const double kappa = std::sqrt(double(n) / (2.0 * kPi));
  std::map<int64_t, cx> acc;
  for (const auto& [gn, cn] : in.amp) {
    const double en = sd.energy(gn);
    const int kn = sd.momentum_flat(gn);
    for (const auto& [gm, elem] : row(gn, false)) {
      const double de = sd.energy(gm) - en;
      const int dk = sd.grid.add(sd.momentum_flat(gm), sd.grid.negate(kn));
      const cx gh = g.ghat_at_flat(dk);
      if (gh == cx(0.0)) continue;
      const double sig = g.sigma_at_flat(dk);
      cx factor = kappa * gh * std::exp(cx(0, (de - sig) * t));
      if (variant == Variant::OpDerivative) factor *= cx(0, de);
      if (variant == Variant::PacketDerivative) factor *= cx(0, -sig);
      acc[gm] += factor * elem * cn;
    }
  }
  SparseEigenState out;
  for (const auto& [g2, z] : acc)
    if (std::abs(z) > 1e-16) out.amp.push_back({g2, z});
  return out;
}

SparseEigenState HrContext::apply_adjoint(const WavePacket& g, double t,
                                          const SparseEigenState& in) {
  // B_t(g_t) = (2 pi)^{-1/2} sum_x conj(g_t(x)) U(t,x) B U(t,x)^*; the x-sum gives
  // sqrt(N) conj(ghat(-dp)) e^{+i Sigma(-dp) t} on the transfer dp
  const SpectralData& sd = cache_->data();
  const int n = int(sd.grid.num_points());
  if (g.m != n) throw DomainError("HR application needs the packet on the physical grid");
  const double kappa = std::sqrt(double(n) / (2.0 * kPi));
  std::map<int64_t, cx> acc;
  for (const auto& [gn, cn] : in.amp) {
    const double en = sd.energy(gn);
    const int kn = sd.momentum_flat(gn);
    for (const auto& [gm, elem] : row(gn, true)) {
      const double de = sd.energy(gm) - en;
      const int dk = sd.grid.add(sd.momentum_flat(gm), sd.grid.negate(kn));
      const int ndk = sd.grid.negate(dk);
      const cx gh = std::conj(g.ghat_at_flat(ndk));
      if (gh == cx(0.0)) continue;
      const double sig = g.sigma_at_flat(ndk);
      acc[gm] += kappa * gh * std::exp(cx(0, (de + sig) * t)) * elem * cn;
    }
  }
  SparseEigenState out;
  for (const auto& [g2, z] : acc)
    if (std::abs(z) > 1e-16) out.amp.push_back({g2, z});
  return out;
}

ScatteringState scattering_state(std::vector<HrContext*> ops,
                                 const std::vector<const WavePacket*>& packets, double t) {
  if (ops.size() != packets.size() || ops.empty())
    throw DomainError("scattering_state: configuration mismatch");
  // disjoint velocity supports with positive margin
  double min_gap = 1e300;
  for (size_t i = 0; i < packets.size(); ++i)
    for (size_t j = i + 1; j < packets.size(); ++j) {
      const auto *a = packets[i], *b = packets[j];
      const double gap = std::max(a->vmin - b->vmax, b->vmin - a->vmax);
      if (gap <= 0.0)
        throw DomainError("velocity supports overlap for packets " + std::to_string(i) + "," +
                          std::to_string(j) + " (gap " + std::to_string(gap) + ")");
      min_gap = std::min(min_gap, gap);
    }

  const SpectralData& sd = ops[0]->cache().data();
  ScatteringState st;
  st.t = t;
  st.min_velocity_gap = packets.size() > 1 ? min_gap : 0.0;
  for (size_t i = 0; i < ops.size(); ++i) st.config.push_back({&ops[i]->op(), packets[i]});

  SparseEigenState psi;
  psi.amp = {{sd.ground_global(), 1.0}};
  st.trivial_norm_bound = 1.0;
  for (size_t i = ops.size(); i-- > 0;) {
    psi = ops[i]->apply(*packets[i], t, psi);
    st.trivial_norm_bound *= op_norm(ops[i]->op().seed) * packets[i]->l1_norm(t);
  }
  st.psi = std::move(psi);

  // pairwise commutator decay bookkeeping, measured on the vacuum
  for (size_t i = 0; i < ops.size(); ++i)
    for (size_t j = i + 1; j < ops.size(); ++j) {
      SparseEigenState om;
      om.amp = {{sd.ground_global(), 1.0}};
      SparseEigenState ij = ops[i]->apply(*packets[i], t, ops[j]->apply(*packets[j], t, om));
      SparseEigenState ji = ops[j]->apply(*packets[j], t, ops[i]->apply(*packets[i], t, om));
      cx diff2 = overlap(ij, ij) + overlap(ji, ji) - overlap(ij, ji) - overlap(ji, ij);
      st.pair_comm_norms.push_back(std::sqrt(std::max(0.0, diff2.real())));
    }
  return st;
}

namespace {

cx permanent(const CMat& g) {
  const int n = g.rows;
  if (n == 0) return 1.0;
  // Ryser over subsets; n is tiny here
  cx total = 0.0;
  for (int mask = 1; mask < (1 << n); ++mask) {
    cx prod = 1.0;
    for (int i = 0; i < n; ++i) {
      cx rowsum = 0.0;
      for (int j = 0; j < n; ++j)
        if (mask & (1 << j)) rowsum += g.at(i, j);
      prod *= rowsum;
    }
    const int bits = __builtin_popcount(unsigned(mask));
    total += ((n - bits) % 2 == 0 ? 1.0 : -1.0) * prod;
  }
  return total;
}

}  // namespace

FockReport fock_factorization_check(std::vector<HrContext*> ops_a,
                                    const std::vector<const WavePacket*>& pk_a,
                                    std::vector<HrContext*> ops_b,
                                    const std::vector<const WavePacket*>& pk_b, double t) {
  const SpectralData& sd = ops_a[0]->cache().data();
  ScatteringState sa = scattering_state(ops_a, pk_a, t);
  ScatteringState sb = scattering_state(ops_b, pk_b, t);
  FockReport rep;
  rep.lhs = overlap(sa.psi, sb.psi);
  rep.same_n = ops_a.size() == ops_b.size();
  if (rep.same_n) {
    const int n = int(ops_a.size());
    // single-particle vectors are t-independent; Gram matrix G[i][j] = <Psi~_i, Psi_j>
    CMat g(n, n);
    for (int i = 0; i < n; ++i) {
      SparseEigenState om;
      om.amp = {{sd.ground_global(), 1.0}};
      SparseEigenState vi = ops_a[size_t(i)]->apply(*pk_a[size_t(i)], t, om);
      for (int j = 0; j < n; ++j) {
        SparseEigenState om2;
        om2.amp = {{sd.ground_global(), 1.0}};
        SparseEigenState vj = ops_b[size_t(j)]->apply(*pk_b[size_t(j)], t, om2);
        g.at(i, j) = overlap(vi, vj);
      }
    }
    rep.permanent = permanent(g);
    rep.deviation = std::abs(rep.lhs - rep.permanent);
  } else {
    rep.permanent = 0.0;
    rep.deviation = std::abs(rep.lhs);
  }
  return rep;
}

double covariance_residual(std::vector<HrContext*> ops,
                           const std::vector<const WavePacket*>& packets, double t, double t0,
                           int x0) {
  const SpectralData& sd = ops[0]->cache().data();
  ScatteringState base = scattering_state(ops, packets, t);
  // U(t0, x0) applied to the state: diagonal phases in eigen-coordinates
  SparseEigenState lhs = base.psi;
  for (auto& [g, z] : lhs.amp) {
    const double e = sd.energy(g);
    const double p = sd.grid.point(sd.momentum_flat(g))[0];
    z *= std::exp(cx(0, e * t0 - p * x0));
  }
  // the same state from translated packets at time t + t0
  std::vector<WavePacket> moved;
  moved.reserve(packets.size());
  for (const WavePacket* pk : packets) {
    WavePacket w = *pk;
    for (int j = 0; j < w.m; ++j) {
      const double p = 2.0 * kPi * j / w.m;
      w.ghat[j] *= std::exp(cx(0, w.sigma[j] * t0 - p * x0));
    }
    moved.push_back(std::move(w));
  }
  std::vector<const WavePacket*> mp;
  for (auto& w : moved) mp.push_back(&w);
  ScatteringState shifted = scattering_state(ops, mp, t + t0);
  cx n2 = overlap(lhs, lhs) + overlap(shifted.psi, shifted.psi) - overlap(lhs, shifted.psi) -
          overlap(shifted.psi, lhs);
  return std::sqrt(std::max(0.0, n2.real()));
}

SMatrixEstimate s_matrix_element(std::vector<HrContext*> in_ops,
                                 const std::vector<const WavePacket*>& in_pk,
                                 std::vector<HrContext*> out_ops,
                                 const std::vector<const WavePacket*>& out_pk,
                                 const std::vector<double>& t_grid) {
  SMatrixEstimate est;
  double trec = 1e300;
  for (const WavePacket* p : in_pk) trec = std::min(trec, p->wrap_time());
  for (const WavePacket* p : out_pk) trec = std::min(trec, p->wrap_time());
  est.t_recurrence = trec;
  for (double t : t_grid) {
    if (t > trec) {
      est.truncated = true;
      break;
    }
    ScatteringState in_state = scattering_state(in_ops, in_pk, -t);
    ScatteringState out_state = scattering_state(out_ops, out_pk, +t);
    est.times.push_back(t);
    est.overlaps.push_back(overlap(out_state.psi, in_state.psi));
    est.norm_in.push_back(in_state.psi.norm());
    est.norm_out.push_back(out_state.psi.norm());
  }
  const size_t m = est.times.size();
  if (m >= 2) {
    // first-order Richardson in h = 1/t
    const double h1 = 1.0 / est.times[m - 1], h0 = 1.0 / est.times[m - 2];
    est.extrapolated =
        (est.overlaps[m - 1] * h0 - est.overlaps[m - 2] * h1) / (h0 - h1);
    est.error_bar = std::abs(est.overlaps[m - 1] - est.overlaps[m - 2]);
  } else if (m == 1) {
    est.extrapolated = est.overlaps[0];
    est.error_bar = std::abs(est.overlaps[0]);
  }
  return est;
}

LocalOperator hr_operator_dense(const EvolutionEngine& eng, const CreationOperator& b,
                                const WavePacket& g, double t) {
  const Lattice& lat = eng.lattice();
  const int nsites = int(lat.num_sites());
  if (g.m != nsites) throw DomainError("dense HR operator needs the packet on the physical grid");
  if (eng.dim() > (int64_t{1} << 10))
    throw DomainError("dense HR materialization capped at 2^10");
  LocalOperator bstar = smear(b.seed, b.filter, eng);
  // spatial smearing first (translations are cheap permutations), one evolution after
  std::vector<cx> gt = g.position_profile(t);
  const int n = int(eng.dim());
  CMat acc(n, n);
  LocalOperator cur = bstar;
  for (int x = 0; x < nsites; ++x) {
    if (x > 0) cur = translate(cur, {1, 0});
    if (gt[x] == cx(0.0)) continue;
    CMat m = cur.to_dense_matrix();
    const cx wgt = gt[x] / std::sqrt(2.0 * kPi);
    for (size_t i = 0; i < acc.a.size(); ++i) acc.a[i] += wgt * m.a[i];
  }
  LocalOperator spatial(lat, Region::full(lat), std::move(acc), "B*(g_t)");
  LocalOperator out = eng.evolve_operator(spatial, t);
  out.set_label("B*_t(g_t)");
  return out;
}

}  // namespace hrlab
