#include "smearing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace hrlab {

namespace {

// transfer (dE, dp) between eigenbasis columns m, n
inline double transfer_de(const std::vector<double>& ev, int m, int n) { return ev[m] - ev[n]; }

std::array<double, 2> transfer_dp(const MomentumGrid& grid, int km, int kn) {
  const int dk = grid.add(km, grid.negate(kn));
  return grid.point(dk);
}

}  // namespace

LocalOperator smear(const LocalOperator& a, const FilterFunction& f, const EvolutionEngine& eng) {
  if (eng.mode() != EvolutionEngine::Mode::Sector)
    throw DomainError("smear needs a periodic joint (E, p) eigenbasis");
  const CMat& w = eng.basis_matrix();
  const auto& ev = eng.basis_evals();
  const auto& mom = eng.basis_momenta();
  const MomentumGrid& grid = eng.spectral().grid;
  const int n = w.rows;

  LocalOperator af = embed(a, Region::full(eng.lattice()));
  CMat am = af.to_dense_matrix();
  CMat tmp(n, n), atil(n, n);
  gemm('C', 'N', 1.0, w, am, 0.0, tmp);
  gemm('N', 'N', 1.0, tmp, w, 0.0, atil);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      atil.at(i, j) *= f.eval(transfer_de(ev, i, j), transfer_dp(grid, mom[i], mom[j]));
  gemm('N', 'N', 1.0, w, atil, 0.0, tmp);
  gemm('N', 'C', 1.0, tmp, w, 0.0, atil);
  return LocalOperator(eng.lattice(), Region::full(eng.lattice()), std::move(atil),
                       "tau_f(" + a.label() + ")");
}

namespace {

// 12-point Gauss-Legendre nodes/weights on [-1, 1]
const double kGlNode[12] = {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
                            -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
                            0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
                            0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGlWeight[12] = {0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
                              0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
                              0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                              0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

// time profile h(t) = (2 pi)^{-1/2} integral of wE(E) e^{-iEt} dE over the window
cx time_profile(const PlateauWindow& we, double t) {
  const double lo = we.center - we.half_width, hi = we.center + we.half_width;
  // composite GL fine enough for the oscillation over the window
  const double cycles = (hi - lo) * std::abs(t) / (2.0 * kPi);
  const int panels = std::max(4, int(cycles) + 4);
  cx acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = lo + (hi - lo) * p / panels;
    const double b = lo + (hi - lo) * (p + 1) / panels;
    for (int q = 0; q < 12; ++q) {
      const double e = 0.5 * (a + b) + 0.5 * (b - a) * kGlNode[q];
      acc += 0.5 * (b - a) * kGlWeight[q] * we.eval(e) * std::exp(cx(0, -e * t));
    }
  }
  return acc / std::sqrt(2.0 * kPi);
}

}  // namespace

LocalOperator smear_quadrature(const LocalOperator& a, const FilterFunction& f,
                               const EvolutionEngine& eng, double tol, QuadratureReport* report) {
  if (eng.lattice().dim() != 1)
    throw DomainError("quadrature smearing path implemented for d = 1");
  if (!f.energy) throw DomainError("quadrature path needs a compact energy window");
  const Lattice& lat = eng.lattice();
  const int nsites = int(lat.num_sites());
  const int n = int(eng.dim());

  // exact lattice sum: S = (2 pi)^{-1/2} sum_x g(x) tau_x(A), with g the inverse
  // grid transform of the momentum window (all-pass => delta at x = 0)
  LocalOperator af = embed(a, Region::full(lat));
  CMat s(n, n);
  {
    MomentumGrid grid(lat);
    std::vector<cx> g(nsites, 0.0);
    if (f.momentum) {
      for (int x = 0; x < nsites; ++x) {
        cx acc = 0.0;
        for (int k = 0; k < nsites; ++k) {
          const double p = 2.0 * kPi * k / nsites;
          acc += f.momentum->eval_dist(circ_dist(p, f.p0[0])) * std::exp(cx(0, p * x));
        }
        g[x] = acc * std::sqrt(2.0 * kPi) / double(nsites);
      }
    } else {
      g[0] = std::sqrt(2.0 * kPi);
    }
    LocalOperator cur = af;
    for (int x = 0; x < nsites; ++x) {
      if (x > 0) cur = translate(cur, {1, 0});
      if (std::abs(g[x]) < 1e-300) continue;
      CMat cm = cur.to_dense_matrix();
      const cx wgt = g[x] / std::sqrt(2.0 * kPi);
      for (size_t i = 0; i < s.a.size(); ++i) s.a[i] += wgt * cm.a[i];
    }
  }

  // effective time support of h
  const PlateauWindow& we = *f.energy;
  const double s_norm = svd_norm_dense(s);
  double tcut = 10.0;
  {
    const double step = 0.5, tmax = 2000.0;
    std::vector<double> habs;
    for (double t = 0.0; t <= tmax; t += step) habs.push_back(std::abs(time_profile(we, t)));
    // cumulative tail integral (two-sided)
    std::vector<double> tail(habs.size() + 1, 0.0);
    for (int i = int(habs.size()) - 1; i >= 0; --i)
      tail[i] = tail[i + 1] + 2.0 * habs[i] * step / std::sqrt(2.0 * kPi);
    size_t i = habs.size() - 1;
    const double budget = 0.25 * tol / std::max(s_norm, 1e-300);
    while (i > 20 && tail[i] < budget) --i;
    tcut = (i + 1) * step;
    if (tail[i + 1] * s_norm > 0.5 * tol)
      throw NumericalError("quadrature truncation estimate " +
                           std::to_string(tail[i + 1] * s_norm) + " above tolerance " +
                           std::to_string(tol));
    if (report) report->tail_estimate = tail[i + 1] * s_norm;
  }

  // accumulate (2 pi)^{-1/2} integral h(t) tau_t(S) dt in the eigenbasis
  const CMat& w = eng.basis_matrix();
  const auto& ev = eng.basis_evals();
  CMat tmp(n, n), stil(n, n);
  gemm('C', 'N', 1.0, w, s, 0.0, tmp);
  gemm('N', 'N', 1.0, tmp, w, 0.0, stil);

  double emax = std::abs(ev.back() - ev.front());
  emax += std::abs(we.center) + we.half_width;
  const double panel_len = kPi / std::max(emax, 1e-6);
  const int panels = std::max(2, int(std::ceil(2.0 * tcut / panel_len)));
  CMat acc(n, n);
  std::vector<cx> phase(n);
  int used = 0;
  for (int p = 0; p < panels; ++p) {
    const double a0 = -tcut + 2.0 * tcut * p / panels;
    const double b0 = -tcut + 2.0 * tcut * (p + 1) / panels;
    for (int q = 0; q < 12; ++q) {
      const double t = 0.5 * (a0 + b0) + 0.5 * (b0 - a0) * kGlNode[q];
      const cx ht = time_profile(we, t);
      const double wq = 0.5 * (b0 - a0) * kGlWeight[q];
      if (std::abs(ht) * wq * s_norm < 1e-18) continue;
      ++used;
      for (int i = 0; i < n; ++i) phase[i] = std::exp(cx(0, ev[i] * t));
      const cx c = wq * ht / std::sqrt(2.0 * kPi);
      for (int i = 0; i < n; ++i) {
        const cx pi_ = c * phase[i];
        cx* arow = acc.row(i);
        const cx* srow = stil.row(i);
        for (int j = 0; j < n; ++j) arow[j] += pi_ * std::conj(phase[j]) * srow[j];
      }
    }
  }
  if (report) {
    report->time_cutoff = tcut;
    report->nodes = used;
  }
  gemm('N', 'N', 1.0, w, acc, 0.0, tmp);
  gemm('N', 'C', 1.0, tmp, w, 0.0, acc);
  return LocalOperator(lat, Region::full(lat), std::move(acc), "tau_f_quad(" + a.label() + ")");
}

bool ArvesonEstimate::covers_all_dp(int num_dp) const {
  std::set<int> dps;
  for (const auto& b : bins) dps.insert(b.dp_flat);
  return int(dps.size()) == num_dp;
}

ArvesonEstimate ArvesonEstimate::negated() const {
  ArvesonEstimate out = *this;
  for (auto& b : out.bins) b.de_bin = -b.de_bin;
  return out;
}

bool ArvesonEstimate::same_bins(const ArvesonEstimate& o) const {
  if (bins.size() != o.bins.size()) return false;
  auto key = [](const ArvesonBin& b) { return std::make_pair(b.de_bin, b.dp_flat); };
  std::vector<std::pair<int64_t, int>> x, y;
  for (const auto& b : bins) x.push_back(key(b));
  for (const auto& b : o.bins) y.push_back(key(b));
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  return x == y;
}

ArvesonEstimate arveson_spectrum(const LocalOperator& a, const EvolutionEngine& eng,
                                 double threshold_rel) {
  const CMat& w = eng.basis_matrix();
  const auto& ev = eng.basis_evals();
  const auto& mom = eng.basis_momenta();
  const MomentumGrid& grid = eng.spectral().grid;
  const int n = w.rows;

  LocalOperator af = embed(a, Region::full(eng.lattice()));
  CMat am = af.to_dense_matrix();
  CMat tmp(n, n), atil(n, n);
  gemm('C', 'N', 1.0, w, am, 0.0, tmp);
  gemm('N', 'N', 1.0, tmp, w, 0.0, atil);

  ArvesonEstimate est;
  const double range = std::max(1e-12, ev.back() - ev.front());
  est.resolution = 1e-3 * range;
  est.threshold = threshold_rel * op_norm(a);

  std::map<std::pair<int64_t, int>, double> acc;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double m = std::abs(atil.at(i, j));
      if (m <= est.threshold) continue;
      const int64_t de_bin = llround((ev[i] - ev[j]) / est.resolution);
      const int dp = grid.add(mom[i], grid.negate(mom[j]));
      auto& slot = acc[{de_bin, dp}];
      slot = std::max(slot, m);
    }
  for (const auto& [k, v] : acc) est.bins.push_back({k.first, k.second, v});
  return est;
}

EmTransferReport em_transfer_check(const LocalOperator& a, const EvolutionEngine& eng,
                                   const std::vector<int64_t>& delta, double tol) {
  const CMat& w = eng.basis_matrix();
  const auto& ev = eng.basis_evals();
  const auto& mom = eng.basis_momenta();
  const MomentumGrid& grid = eng.spectral().grid;
  const int n = w.rows;

  ArvesonEstimate sp = arveson_spectrum(a, eng);
  LocalOperator af = embed(a, Region::full(eng.lattice()));
  CMat am = af.to_dense_matrix();
  CMat tmp(n, n), atil(n, n);
  gemm('C', 'N', 1.0, w, am, 0.0, tmp);
  gemm('N', 'N', 1.0, tmp, w, 0.0, atil);

  // Minkowski sum of Delta with the binned transfers; closure margin = one bin
  const double margin = sp.resolution + 1e-9 * std::max(1.0, std::abs(ev.back()));
  std::map<int, std::vector<double>> bins_by_dp;
  for (const auto& b : sp.bins) bins_by_dp[b.dp_flat].push_back(b.de_bin * sp.resolution);
  for (auto& [dp, des] : bins_by_dp) std::sort(des.begin(), des.end());
  auto near_bin = [&](int dp, double de) {
    auto it = bins_by_dp.find(dp);
    if (it == bins_by_dp.end()) return false;
    const auto& des = it->second;
    auto lo = std::lower_bound(des.begin(), des.end(), de - margin);
    return lo != des.end() && *lo <= de + margin;
  };
  std::vector<char> allowed(n, 0);
  for (int m = 0; m < n; ++m) {
    for (int64_t q : delta) {
      const int dp = grid.add(mom[m], grid.negate(mom[q]));
      if (near_bin(dp, ev[m] - ev[q])) {
        allowed[m] = 1;
        break;
      }
    }
  }
  EmTransferReport rep;
  rep.delta_size = int64_t(delta.size());
  for (int m = 0; m < n; ++m) rep.allowed += allowed[m];
  // residual = || (1 - P_allowed) A P_Delta ||: rows outside the allowed set,
  // columns in Delta
  CMat sub(n - int(rep.allowed), int(delta.size()));
  int r = 0;
  for (int m = 0; m < n; ++m) {
    if (allowed[m]) continue;
    for (size_t c = 0; c < delta.size(); ++c) sub.at(r, int(c)) = atil.at(m, int(delta[c]));
    ++r;
  }
  rep.residual = (sub.rows == 0 || sub.cols == 0) ? 0.0 : svd_norm_dense(sub);
  rep.pass = rep.residual <= tol;
  return rep;
}

AlmostLocalityProfile almost_locality_profile(const LocalOperator& a_full, const Site& center,
                                              const std::vector<int>& radii) {
  AlmostLocalityProfile prof;
  for (int r : radii) {
    Region zr = ball(a_full.lattice(), center, r);
    LocalOperator pi = conditional_expectation(a_full, zr);
    LocalOperator diff = add(a_full, -1.0, embed(pi, a_full.support()));
    prof.radii.push_back(r);
    prof.deviation.push_back(op_norm(diff));
  }
  return prof;
}

HarmonicReport harmonic_bound_check(const LocalOperator& a, const EvolutionEngine& eng,
                                    const std::vector<int64_t>& delta, double c_fitted) {
  // precondition: annihilation type (negative energy transfers only)
  ArvesonEstimate sp = arveson_spectrum(a, eng);
  for (const auto& b : sp.bins)
    if (b.de_bin * sp.resolution >= -0.5 * sp.resolution)
      throw DomainError("harmonic bound: operator has non-negative energy transfer");

  const Lattice& lat = eng.lattice();
  const int nsites = int(lat.num_sites());
  const int n = int(eng.dim());

  LocalOperator af = embed(a, Region::full(lat));
  CMat am = af.to_dense_matrix();
  CMat ah = am.adjoint();
  CMat aa(n, n);
  gemm('N', 'N', 1.0, ah, am, 0.0, aa);  // a^dagger a

  // G = sum_x tau_x(a^dagger a)
  LocalOperator g0(lat, Region::full(lat), aa, "a*a");
  CMat g(n, n);
  LocalOperator cur = g0;
  for (int x = 0; x < nsites; ++x) {
    if (x > 0) cur = translate(cur, {1, 0});
    CMat cm = cur.to_dense_matrix();
    for (size_t i = 0; i < g.a.size(); ++i) g.a[i] += cm.a[i];
  }

  // P(Delta) G P(Delta) in the eigenbasis
  const CMat& w = eng.basis_matrix();
  CMat tmp(n, n), gtil(n, n);
  gemm('C', 'N', 1.0, w, g, 0.0, tmp);
  gemm('N', 'N', 1.0, tmp, w, 0.0, gtil);
  CMat sub(int(delta.size()), int(delta.size()));
  for (size_t i = 0; i < delta.size(); ++i)
    for (size_t j = 0; j < delta.size(); ++j)
      sub.at(int(i), int(j)) = gtil.at(int(delta[i]), int(delta[j]));
  HarmonicReport rep;
  rep.lhs = delta.empty() ? 0.0 : svd_norm_dense(sub);

  // sum over the displacement set Lambda - Lambda (the whole torus here)
  LocalOperator acur = af;
  for (int x = 0; x < nsites; ++x) {
    if (x > 0) acur = translate(acur, {1, 0});
    LocalOperator comm =
        add(multiply(af.adjoint(), acur), -1.0, multiply(acur, af.adjoint()));
    rep.comm_sum += op_norm(comm);
  }
  rep.c_used = c_fitted;
  rep.pass = rep.lhs <= c_fitted * rep.comm_sum + 1e-9;
  return rep;
}

double SparseEigenState::norm() const {
  double s = 0.0;
  for (const auto& [g, z] : amp) s += std::norm(z);
  return std::sqrt(s);
}

void SparseEigenState::scale(cx s) {
  for (auto& [g, z] : amp) z *= s;
}

void SparseEigenState::prune(double floor) {
  std::vector<std::pair<int64_t, cx>> keep;
  for (const auto& [g, z] : amp)
    if (std::abs(z) > floor) keep.push_back({g, z});
  amp = std::move(keep);
}

cx overlap(const SparseEigenState& x, const SparseEigenState& y) {
  // both sorted by global index
  cx acc = 0.0;
  size_t i = 0, j = 0;
  while (i < x.amp.size() && j < y.amp.size()) {
    if (x.amp[i].first < y.amp[j].first) ++i;
    else if (x.amp[i].first > y.amp[j].first) ++j;
    else acc += std::conj(x.amp[i++].second) * y.amp[j++].second;
  }
  return acc;
}

const std::vector<cx>& EigvecCache::get(int64_t g) {
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  return cache_.emplace(g, sd_->materialize(g)).first->second;
}

SparseEigenState apply_filtered(EigvecCache& cache, const LocalOperator& seed,
                                const FilterFunction& f, const SparseEigenState& in,
                                double amp_floor) {
  const SpectralData& sd = cache.data();
  const MomentumGrid& grid = sd.grid;
  std::map<int64_t, cx> out;
  double elo = -1e300, ehi = 1e300;
  f.energy_support(elo, ehi);

  std::vector<cx> sv(sd.hilbert_dim());
  for (const auto& [gn, cn] : in.amp) {
    const double en = sd.energy(gn);
    const int kn = sd.momentum_flat(gn);
    seed.apply_embedded(cache.get(gn).data(), sv.data());
    // candidate targets: momenta within the filter's momentum window, energies in
    // the shifted energy window
    for (int km = 0; km < int(grid.num_points()); ++km) {
      const auto dp = transfer_dp(grid, km, kn);
      // cheap reject on the momentum window
      if (f.momentum && f.momentum->eval_dist(circ_dist(dp[0], f.p0[0])) == 0.0) continue;
      if (f.momentum1 && f.momentum1->eval_dist(circ_dist(dp[1], f.p0[1])) == 0.0) continue;
      for (int64_t gm : sd.in_window(km, en + elo, en + ehi)) {
        const double fval = f.eval(sd.energy(gm) - en, dp);
        if (fval == 0.0) continue;
        const cx me = dot(cache.get(gm), sv);
        if (me == cx(0.0)) continue;
        out[gm] += fval * me * cn;
      }
    }
  }
  SparseEigenState st;
  for (const auto& [g, z] : out)
    if (std::abs(z) > amp_floor) st.amp.push_back({g, z});
  return st;
}

CreationOperator make_creation_operator(const LocalOperator& seed, const MassShell& shell,
                                        const JointSpectrum& js, EigvecCache& cache,
                                        int p0_flat, double we, double wp) {
  const SpectralData& sd = *js.data;
  const MomentumGrid& grid = sd.grid;
  const double sigma0 = shell.sigma[p0_flat];

  // window must meet Sp U only inside the shell
  std::string offenders;
  std::vector<int64_t> window_states;
  for (int k = 0; k < int(grid.num_points()); ++k) {
    if (circ_dist(grid.point(k)[0], grid.point(p0_flat)[0]) >= wp) continue;
    for (int64_t g : sd.in_window(k, sigma0 - we, sigma0 + we)) {
      if (std::abs(sd.energy(g) - shell.sigma[k]) <= 1e-9) {
        window_states.push_back(g);
      } else {
        offenders += " (E=" + std::to_string(sd.energy(g)) +
                     ", p_index=" + std::to_string(k) + ")";
      }
    }
  }
  if (!offenders.empty())
    throw DomainError("creation window touches non-shell spectrum:" + offenders);

  CreationOperator b;
  b.seed = seed;
  b.filter = FilterFunction::product(sigma0, we, grid.point(p0_flat)[0], wp);
  b.p0_flat = p0_flat;
  b.we = we;
  b.wp = wp;
  b.window_states = window_states;

  // diagnostics on the vacuum
  SparseEigenState omega;
  omega.amp = {{sd.ground_global(), 1.0}};
  SparseEigenState bo = apply_filtered(cache, seed, b.filter, omega);
  b.creates_norm = bo.norm();
  SparseEigenState bdo = apply_filtered(cache, seed.adjoint(), b.filter.reflected(), omega);
  b.annihilates_vacuum = bdo.norm();
  return b;
}

double creation_density_residual(const std::vector<CreationOperator>& battery,
                                 const JointSpectrum& js, EigvecCache& cache) {
  const SpectralData& sd = *js.data;
  // union of windowed shell states
  std::set<int64_t> target;
  for (const auto& b : battery)
    for (int64_t g : b.window_states) target.insert(g);
  if (target.empty()) return 0.0;
  std::vector<int64_t> tgt(target.begin(), target.end());

  // vectors B_i* Omega restricted to the target states
  std::vector<SparseEigenState> vecs;
  for (const auto& b : battery) {
    SparseEigenState omega;
    omega.amp = {{sd.ground_global(), 1.0}};
    SparseEigenState v = apply_filtered(cache, b.seed, b.filter, omega);
    if (v.norm() > 1e-12) {
      v.scale(1.0 / v.norm());
      vecs.push_back(std::move(v));
    }
  }
  if (vecs.empty()) return 1.0;

  // Gram-based projector residual: worst distance of a target basis state to the span
  CMat m(int(tgt.size()), int(vecs.size()));
  for (size_t j = 0; j < vecs.size(); ++j)
    for (const auto& [g, z] : vecs[j].amp) {
      auto it = std::lower_bound(tgt.begin(), tgt.end(), g);
      if (it != tgt.end() && *it == g) m.at(int(it - tgt.begin()), int(j)) = z;
    }
  // orthonormalize columns (modified Gram-Schmidt)
  std::vector<std::vector<cx>> q;
  for (int j = 0; j < m.cols; ++j) {
    std::vector<cx> v(m.rows);
    for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
    for (const auto& u : q) axpy(-dot(u, v), u, v);
    double nn = nrm2(v);
    if (nn > 1e-10) {
      for (auto& z : v) z /= nn;
      q.push_back(std::move(v));
    }
  }
  double worst = 0.0;
  for (size_t t = 0; t < tgt.size(); ++t) {
    std::vector<cx> e(tgt.size(), 0.0);
    e[t] = 1.0;
    for (const auto& u : q) axpy(-dot(u, e), u, e);
    worst = std::max(worst, nrm2(e));
  }
  return worst;
}

}  // namespace hrlab
