#include "lightcone.hpp"

#include <algorithm>
#include <cmath>

#include "core/lanczos.hpp"
#include "core/parallel.hpp"

namespace hrlab {

namespace {

double commutator_norm_matfree(const EvolutionEngine& eng, const LocalOperator& a,
                               const LocalOperator& bx, double t, bool hermitian_pair) {
  const int64_t dim = eng.dim();
  std::vector<cx> tmp1(dim), tmp2(dim);
  MatVec mv = [&](const cx* x, cx* y) {
    // y = i ( tau_t(a) b x - b tau_t(a) x )
    bx.apply_embedded(x, tmp1.data());
    eng.apply_evolved(a, t, tmp1.data(), y);
    eng.apply_evolved(a, t, x, tmp1.data());
    bx.apply_embedded(tmp1.data(), tmp2.data());
    for (int64_t i = 0; i < dim; ++i) y[i] = cx(0, 1) * (y[i] - tmp2[i]);
  };
  if (hermitian_pair) return lanczos_extreme_abs(mv, dim, 1e-3, 48, 0xc0ffee123ull);
  LocalOperator ah = a.adjoint(), bh = bx.adjoint();
  std::vector<cx> tmp3(dim), tmp4(dim);
  MatVec mvh = [&](const cx* x, cx* y) {
    // adjoint of i[tau_t(a), b]: -i ( b^H tau_t(a^H) x - tau_t(a^H) b^H x )
    eng.apply_evolved(ah, t, x, tmp3.data());
    bh.apply_embedded(tmp3.data(), y);
    bh.apply_embedded(x, tmp3.data());
    eng.apply_evolved(ah, t, tmp3.data(), tmp4.data());
    for (int64_t i = 0; i < dim; ++i) y[i] = cx(0, -1) * (y[i] - tmp4[i]);
  };
  return lanczos_largest_sv(mv, mvh, dim, 1e-3, 64);
}

}  // namespace

LightConeProfile lightcone_profile(const EvolutionEngine& eng, const LocalOperator& a,
                                   const LocalOperator& b, const std::vector<double>& times,
                                   const std::vector<int>& displacements, double threshold,
                                   double r0) {
  if (a.support().size() > 2 || b.support().size() > 2)
    throw DomainError("lightcone_profile expects small supports (|support| <= 2)");
  const bool herm = a.check_hermitian() && b.check_hermitian();
  LightConeProfile prof;
  prof.threshold = threshold;
  prof.r0 = r0;

  struct Task {
    double t;
    int x;
    int dist;
  };
  std::vector<Task> tasks;
  for (double t : times)
    for (int x : displacements) {
      LocalOperator bx = translate(b, {x, 0});
      tasks.push_back({t, x, dist(eng.lattice(), a.support(), bx.support())});
    }
  std::vector<double> norms(tasks.size(), 0.0);
  parallel_for(int(tasks.size()), [&](int i) {
    const Task& tk = tasks[i];
    LocalOperator bx = translate(b, {tk.x, 0});
    if (tk.t == 0.0 && tk.dist > 0) {
      norms[i] = 0.0;  // exact zero for disjoint supports
      return;
    }
    if (eng.dim() <= (int64_t{1} << 11)) {
      LocalOperator at = eng.evolve_operator(a, tk.t);
      norms[i] = op_norm(commutator(at, bx));
    } else {
      norms[i] = commutator_norm_matfree(eng, a, bx, tk.t, herm);
    }
  });
  for (size_t i = 0; i < tasks.size(); ++i)
    prof.samples.push_back({tasks[i].t, tasks[i].x, tasks[i].dist, norms[i]});

  // empirical front: smallest v such that every sample above threshold sits
  // inside dist <= v t + r0
  double v = 0.0;
  for (const auto& s : prof.samples)
    if (s.comm_norm >= threshold && s.t > 0.0) v = std::max(v, (s.dist - r0) / s.t);
  prof.v_emp = v;

  // decay fit outside the empirical cone
  std::vector<double> xs, ys;
  for (const auto& s : prof.samples) {
    const double slack = s.dist - prof.v_emp * s.t;
    if (slack > 0 && s.comm_norm > 1e-14 && s.comm_norm < threshold) {
      xs.push_back(slack);
      ys.push_back(std::log(s.comm_norm));
    }
  }
  prof.usable_fit_samples = int(xs.size());
  if (xs.size() < 3)
    throw NumericalError("lightcone fit: only " + std::to_string(xs.size()) +
                         " usable outside-cone samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double den = double(xs.size()) * sxx - sx * sx;
  prof.fit_rate = (double(xs.size()) * sxy - sx * sy) / den;
  prof.fit_logc = (sy - prof.fit_rate * sx) / double(xs.size());
  return prof;
}

double lrb_envelope(const LRCertificate& cert, double norm_a, double norm_b, int sa, int sb,
                    int dist, double t) {
  const double pref =
      2.0 * norm_a * norm_b / cert.c_lambda * std::min(sa, sb) * cert.f_norm;
  return pref * std::exp(-cert.lambda_star * (dist - cert.v_star * std::abs(t)));
}

double boundary_gap(const Interaction& phi, int n_sites, double t, int site_a, int axis_a) {
  Lattice open = Lattice::chain(n_sites, Boundary::Open);
  Lattice per = Lattice::chain(n_sites, Boundary::Periodic);
  Hamiltonian ho = build_hamiltonian(phi, open);
  Hamiltonian hp = build_hamiltonian(phi, per);
  LocalOperator a_open = LocalOperator::pauli(open, {site_a, 0}, axis_a);
  LocalOperator a_per = LocalOperator::pauli(per, {site_a, 0}, axis_a);
  const int64_t dim = ho.dim();

  std::vector<cx> w1(dim), w2(dim);
  MatVec diff = [&](const cx* x, cx* y) {
    // open branch, Krylov
    std::vector<cx> v(x, x + dim);
    krylov_evolve(ho, v, t, -1.0);
    a_open.apply_embedded(v.data(), w1.data());
    std::copy(w1.begin(), w1.end(), v.begin());
    krylov_evolve(ho, v, t, +1.0);
    // periodic branch
    std::vector<cx> u(x, x + dim);
    krylov_evolve(hp, u, t, -1.0);
    a_per.apply_embedded(u.data(), w2.data());
    std::copy(w2.begin(), w2.end(), u.begin());
    krylov_evolve(hp, u, t, +1.0);
    for (int64_t i = 0; i < dim; ++i) y[i] = v[i] - u[i];
  };
  // difference of Hermitian operators is Hermitian
  return lanczos_extreme_abs(diff, dim, 1e-4, 60, 0xb0a7ull);
}

ClusteringFit clustering_fit(const EvolutionEngine& eng, const LocalOperator& a,
                             const LocalOperator& b, int max_dist) {
  ClusteringFit fit;
  std::vector<cx> omega = eng.ground_state();
  const int64_t dim = eng.dim();
  std::vector<cx> av(dim), bv(dim);
  a.apply_embedded(omega.data(), av.data());
  const cx ea = dot(omega, av);
  std::vector<double> xs, ys;
  for (int x = 1; x <= max_dist; ++x) {
    LocalOperator bx = translate(b, {x, 0});
    bx.apply_embedded(omega.data(), bv.data());
    const cx eb = dot(omega, bv);
    // <A tau_x(B)>: apply bx then a
    std::vector<cx> abv(dim);
    a.apply_embedded(bv.data(), abv.data());
    const cx eab = dot(omega, abv);
    const double c = std::abs(eab - ea * eb);
    fit.dists.push_back(x);
    fit.values.push_back(c);
    if (c > 1e-15) {
      xs.push_back(double(dist(eng.lattice(), a.support(), bx.support())));
      ys.push_back(std::log(c));
    }
  }
  if (xs.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
      sx += xs[i];
      sy += ys[i];
      sxx += xs[i] * xs[i];
      sxy += xs[i] * ys[i];
    }
    const double den = double(xs.size()) * sxx - sx * sx;
    const double slope = (double(xs.size()) * sxy - sx * sy) / den;
    fit.mu = -slope;
    fit.logc = (sy - slope * sx) / double(xs.size());
  }
  return fit;
}

}  // namespace hrlab
