#include "joint_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hrlab {

namespace {

JointSpectrum assemble(const std::shared_ptr<const SpectralData>& sd) {
  JointSpectrum js;
  js.data = sd;
  js.e0_raw = sd->e0_raw;
  js.grid = sd->grid;
  js.dim_d = sd->lat.dim();
  const double merge_tol = 1e-9;
  std::vector<double> all;
  for (const auto& sec : sd->sectors) {
    js.sector_dims.push_back(sec.basis->dim());
    for (size_t i = 0; i < sec.evals.size(); ++i) {
      const double e = sec.evals[i];
      all.push_back(e);
      if (!js.points.empty() && js.points.back().p_flat == sec.k_flat &&
          std::abs(js.points.back().e - e) <= merge_tol) {
        js.points.back().mult += 1;
      } else {
        js.points.push_back({e, sec.k_flat, 1});
      }
    }
  }
  std::sort(all.begin(), all.end());
  js.gap = all.size() > 1 ? all[1] - all[0] : 0.0;
  return js;
}

}  // namespace

double JointSpectrum::retained_ceiling() const {
  double c = 1e300;
  for (const auto& sec : data->sectors)
    if (!sec.evals.empty()) c = std::min(c, sec.evals.back());
  return c;
}

JointSpectrum momentum_sectors(const Hamiltonian& h) {
  if (h.lattice().boundary() != Boundary::Periodic)
    throw DomainError(
        "momentum sectors need periodic boundary (no translation operator); "
        "open-boundary spectra support gap-only analysis");
  EvolutionEngine e = EvolutionEngine::make_sectors(h);
  return momentum_sectors(e);
}

JointSpectrum momentum_sectors(const EvolutionEngine& engine) {
  auto sd = engine.spectral_ptr();
  if (!sd) throw DomainError("engine has no momentum-sector data");
  return assemble(sd);
}

JointSpectrum momentum_sectors_band(const Hamiltonian& h, int per_sector) {
  if (h.lattice().boundary() != Boundary::Periodic)
    throw DomainError("momentum sectors need periodic boundary");
  EvolutionEngine e = EvolutionEngine::make_sectors_band(h, per_sector);
  return momentum_sectors(e);
}

double verify_rayleigh(const JointSpectrum& js, const Hamiltonian& h, int samples) {
  const SpectralData& sd = *js.data;
  double worst = 0.0;
  std::mt19937_64 rng(777);
  std::vector<cx> hv(sd.hilbert_dim());
  for (size_t s = 0; s < sd.sectors.size(); ++s) {
    const auto& sec = sd.sectors[s];
    std::vector<int> idx(sec.evals.size());
    for (size_t i = 0; i < idx.size(); ++i) idx[i] = int(i);
    if (samples > 0 && int(idx.size()) > samples) {
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(samples);
    }
    for (int i : idx) {
      auto v = sd.materialize(sd.global_index(int(s), i));
      h.apply(v.data(), hv.data());
      cx ray = dot(v, hv);
      worst = std::max(worst, std::abs(ray.real() - (sec.evals[i] + sd.e0_raw)));
    }
  }
  return worst;
}

double MassShell::sigma_at(double p) const {
  cx acc = 0.0;
  const int order = interp_order;
  for (int m = -order; m <= order; ++m)
    acc += interp_coeffs[m + order] * std::exp(cx(0, m * p));
  return acc.real();
}

double MassShell::dsigma_at(double p) const {
  cx acc = 0.0;
  const int order = interp_order;
  for (int m = -order; m <= order; ++m)
    acc += interp_coeffs[m + order] * cx(0, m) * std::exp(cx(0, m * p));
  return acc.real();
}

double MassShell::d2sigma_at(double p) const {
  cx acc = 0.0;
  const int order = interp_order;
  for (int m = -order; m <= order; ++m)
    acc += interp_coeffs[m + order] * cx(-double(m) * m, 0) * std::exp(cx(0, m * p));
  return acc.real();
}

double MassShell::max_group_velocity() const {
  double v = 0.0;
  // fine scan of the interpolant plus the grid finite differences
  for (int i = 0; i < 2048; ++i) v = std::max(v, std::abs(dsigma_at(2.0 * kPi * i / 2048)));
  for (double d : dsigma_fd) v = std::max(v, std::abs(d));
  return v;
}

MassShell extract_mass_shell(const JointSpectrum& js, double e_lo, double e_hi) {
  const SpectralData& sd = *js.data;
  MassShell shell;
  const int nk = int(sd.grid.num_points());
  shell.n_grid = nk;
  shell.p_flats.resize(nk);
  shell.sigma.resize(nk);
  shell.isolation.resize(nk);

  std::ostringstream amb, cov;
  bool ambiguous = false, coverage = false;
  for (int k = 0; k < nk; ++k) {
    shell.p_flats[k] = k;
    auto in = sd.in_window(k, e_lo, e_hi);
    if (in.empty()) {
      coverage = true;
      cov << " p_index=" << k;
      continue;
    }
    if (in.size() > 1) {
      ambiguous = true;
      amb << " p_index=" << k << " (" << in.size() << " levels:";
      for (auto g : in) amb << " " << sd.energy(g);
      amb << ")";
      continue;
    }
    const double e = sd.energy(in[0]);
    shell.sigma[k] = e;
    // isolation margin: distance to the nearest other retained level at the same p
    double iso = 1e300;
    const int s = sd.sector_of_k(k);
    for (double other : sd.sectors[s].evals)
      if (std::abs(other - e) > 1e-12) iso = std::min(iso, std::abs(other - e));
    shell.isolation[k] = iso;
  }
  if (ambiguous)
    throw DomainError("mass-shell window ambiguous, >=2 levels at:" + amb.str());
  if (coverage)
    throw DomainError("mass-shell window has no level at:" + cov.str());

  if (js.dim_d == 1) {
    // trigonometric interpolant through the samples
    const int n = nk;
    shell.interp_order = n / 2;
    shell.interp_coeffs.assign(2 * shell.interp_order + 1, 0.0);
    for (int m = -shell.interp_order; m <= shell.interp_order; ++m) {
      cx acc = 0.0;
      for (int k = 0; k < n; ++k)
        acc += shell.sigma[k] * std::exp(cx(0, -m * 2.0 * kPi * k / n));
      acc /= double(n);
      if (n % 2 == 0 && std::abs(m) == shell.interp_order) acc *= 0.5;  // split Nyquist
      shell.interp_coeffs[m + shell.interp_order] = acc;
    }
    double res = 0.0;
    for (int k = 0; k < n; ++k)
      res = std::max(res, std::abs(shell.sigma_at(2.0 * kPi * k / n) - shell.sigma[k]));
    shell.interp_max_residual = res;

    // classification surrogates (thresholds documented in the module docs):
    // condition (c) and regularity coincide in d=1 and use |Sigma''| > 1e-6 on
    // all but a vanishing fraction of grid points
    int curved = 0;
    for (int k = 0; k < n; ++k)
      if (std::abs(shell.d2sigma_at(2.0 * kPi * k / n)) > 1e-6) ++curved;
    const double frac = double(curved) / n;
    shell.condition_c = frac >= 0.75;
    shell.regular = shell.condition_c;

    // pseudo-relativistic: (h - h) meets Sp U only at the origin; tolerance is
    // 10x the median level spacing
    std::vector<double> all_e;
    for (const auto& p : js.points) all_e.push_back(p.e);
    std::sort(all_e.begin(), all_e.end());
    std::vector<double> gaps;
    for (size_t i = 1; i < all_e.size(); ++i) gaps.push_back(all_e[i] - all_e[i - 1]);
    double med = 0.0;
    if (!gaps.empty()) {
      std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
      med = gaps[gaps.size() / 2];
    }
    const double tol = 10.0 * med;
    bool pseudo = true;
    const double ceiling = js.retained_ceiling();
    for (int kp = 0; kp < n && pseudo; ++kp) {
      for (int kq = 0; kq < n && pseudo; ++kq) {
        if (kp == kq) continue;  // origin hit is the allowed one
        const double de = shell.sigma[kp] - shell.sigma[kq];
        if (std::abs(de) > ceiling) continue;
        const int dp = sd.grid.add(kp, sd.grid.negate(kq));
        const int s = sd.sector_of_k(dp);
        double mind = 1e300;
        for (double e : sd.sectors[s].evals) mind = std::min(mind, std::abs(e - de));
        if (dp == 0 && std::abs(de) <= tol) continue;  // the origin itself
        if (mind <= tol) pseudo = false;
      }
    }
    shell.pseudo_relativistic = pseudo;
    shell.classification_note = "d=1 grid surrogates";
  } else {
    shell.classification_note = "classification indeterminate for d>1";
  }
  return shell;
}

MassShell& group_velocity(MassShell& shell) {
  const int n = shell.n_grid;
  if (n < 4) throw DomainError("group velocity needs at least 4 grid points");
  shell.dsigma_fd.resize(n);
  const double h = 2.0 * kPi / n;
  for (int k = 0; k < n; ++k) {
    const int kp = (k + 1) % n, km = (k - 1 + n) % n;
    shell.dsigma_fd[k] = (shell.sigma[kp] - shell.sigma[km]) / (2.0 * h);
  }
  if (!shell.interp_coeffs.empty()) {
    shell.dsigma_interp.resize(n);
    double disc = 0.0;
    for (int k = 0; k < n; ++k) {
      shell.dsigma_interp[k] = shell.dsigma_at(2.0 * kPi * k / n);
      disc = std::max(disc, std::abs(shell.dsigma_interp[k] - shell.dsigma_fd[k]));
    }
    shell.fd_interp_discrepancy = disc;
  }
  return shell;
}

AdditivityReport check_additivity(const JointSpectrum& js, int samples, double tol_e,
                                  uint64_t seed) {
  AdditivityReport rep;
  rep.tol_e = tol_e;
  if (js.points.empty()) return rep;
  const SpectralData& sd = *js.data;
  const double ceiling = js.retained_ceiling();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<size_t> pick(0, js.points.size() - 1);
  int guard = 0;
  while (rep.tested < samples && guard < 100 * samples) {
    ++guard;
    const auto& q1 = js.points[pick(rng)];
    const auto& q2 = js.points[pick(rng)];
    const double esum = q1.e + q2.e;
    if (esum > ceiling - tol_e) continue;  // finite-volume caveat
    const int psum = sd.grid.add(q1.p_flat, q2.p_flat);
    const int s = sd.sector_of_k(psum);
    double mind = 1e300;
    for (double e : sd.sectors[s].evals) mind = std::min(mind, std::abs(e - esum));
    ++rep.tested;
    if (mind <= tol_e) {
      ++rep.passed;
    } else if (mind > rep.worst) {
      rep.worst = mind;
      rep.worst_i = q1.p_flat;
      rep.worst_j = q2.p_flat;
    }
    rep.worst = std::max(rep.worst, mind);
  }
  rep.pass = rep.tested > 0 && rep.passed == rep.tested;
  return rep;
}

GapFlow gap_flow(const Interaction& phi, const std::vector<int>& sizes, double floor) {
  if (sizes.size() < 3) throw DomainError("gap flow needs at least 3 sizes");
  GapFlow gf;
  gf.floor = floor;
  for (int n : sizes) {
    Lattice lat = Lattice::chain(n, Boundary::Periodic);
    Hamiltonian h = build_hamiltonian(phi, lat);
    JointSpectrum js = momentum_sectors_band(h, 2);
    gf.sizes.push_back(n);
    gf.gaps.push_back(js.gap);
  }
  // geometric extrapolation on the tail differences
  const size_t m = gf.gaps.size();
  const double d1 = gf.gaps[m - 1] - gf.gaps[m - 2];
  const double d0 = gf.gaps[m - 2] - gf.gaps[m - 3];
  if (std::abs(d0) > 1e-15 && std::abs(d1 / d0) < 1.0) {
    const double r = d1 / d0;
    gf.extrapolated = gf.gaps[m - 1] + d1 * r / (1.0 - r);
  } else {
    gf.extrapolated = gf.gaps[m - 1];
  }
  bool inc = true, dec = true;
  for (size_t i = 1; i < m; ++i) {
    if (gf.gaps[i] < gf.gaps[i - 1]) inc = false;
    if (gf.gaps[i] > gf.gaps[i - 1]) dec = false;
  }
  gf.monotone_trend = inc || dec;
  gf.pass = *std::min_element(gf.gaps.begin(), gf.gaps.end()) > floor;
  return gf;
}

}  // namespace hrlab
