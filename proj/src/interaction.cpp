#include "interaction.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace hrlab {

double DecayFunction::norm() const {
  // l-infinity shells: 1 site at r=0, (2r+1)^d - (2r-1)^d sites at radius r
  double s = F(0);
  if (d == 1) {
    for (int64_t r = 1; r <= truncation; ++r) s += 2.0 * F(double(r));
  } else {
    for (int64_t r = 1; r <= std::min<int64_t>(truncation, 200000); ++r) s += 8.0 * r * F(double(r));
  }
  return s;
}

double DecayFunction::norm_tail() const {
  // integral comparison for the dropped shells
  const double t = double(truncation);
  if (d == 1) return 2.0 * std::pow(1.0 + t, -eps_f) / eps_f;
  const double tt = double(std::min<int64_t>(truncation, 200000));
  return 8.0 * std::pow(1.0 + tt, -eps_f) * (tt / eps_f + 1.0 / (eps_f + 1.0));
}

namespace {

CMat kron2(const CMat& a, const CMat& b) {
  // bit 0 = first (lower) site: index i = bit0 + 2*bit1, factor a acts on bit 0
  CMat m(4, 4);
  for (int r1 = 0; r1 < 2; ++r1)
    for (int c1 = 0; c1 < 2; ++c1)
      for (int r0 = 0; r0 < 2; ++r0)
        for (int c0 = 0; c0 < 2; ++c0)
          m.at(r0 + 2 * r1, c0 + 2 * c1) = a.at(r0, c0) * b.at(r1, c1);
  return m;
}

CMat pauli_mat(int axis) {
  CMat m(2, 2);
  switch (axis) {
    case 0: m.at(0, 0) = 1; m.at(1, 1) = 1; break;
    case 1: m.at(0, 1) = 1; m.at(1, 0) = 1; break;
    case 2: m.at(0, 1) = cx(0, -1); m.at(1, 0) = cx(0, 1); break;
    case 3: m.at(0, 0) = 1; m.at(1, 1) = -1; break;
  }
  return m;
}

}  // namespace

Interaction Interaction::ising(int d, double eps) {
  Interaction phi;
  phi.name = "ising";
  phi.d = d;
  phi.eps = eps;
  phi.range = 1;
  // on-site: -(sigma3 - 1)/2 = diag(0, 1), counts flipped spins
  InteractionGenerator onsite;
  onsite.rel_sites = {Displacement{0, 0}};
  onsite.mat = CMat(2, 2);
  onsite.mat.at(1, 1) = 1.0;
  onsite.label = "-(sigma3-1)/2";
  phi.generators.push_back(std::move(onsite));
  // bonds: -eps sigma1 sigma1 along each axis
  for (int axis = 0; axis < d; ++axis) {
    InteractionGenerator bond;
    bond.rel_sites = {Displacement{0, 0}, axis == 0 ? Displacement{1, 0} : Displacement{0, 1}};
    bond.mat = cx(-eps) * kron2(pauli_mat(1), pauli_mat(1));
    bond.label = "-eps sigma1 sigma1";
    phi.generators.push_back(std::move(bond));
  }
  return phi;
}

Interaction Interaction::heisenberg(int d, double eps) {
  Interaction phi;
  phi.name = "heisenberg";
  phi.d = d;
  phi.eps = eps;
  phi.range = 1;
  for (int axis = 0; axis < d; ++axis) {
    InteractionGenerator bond;
    bond.rel_sites = {Displacement{0, 0}, axis == 0 ? Displacement{1, 0} : Displacement{0, 1}};
    CMat zz = kron2(pauli_mat(3), pauli_mat(3));
    CMat xx = kron2(pauli_mat(1), pauli_mat(1));
    CMat yy = kron2(pauli_mat(2), pauli_mat(2));
    bond.mat = cx(0.5) * (zz + CMat::identity(4) + cx(eps) * (xx + yy));
    bond.label = "heisenberg bond";
    phi.generators.push_back(std::move(bond));
  }
  return phi;
}

double Interaction::generator_norm(size_t i) const {
  const auto& g = generators[i];
  if (g.norm >= 0) return g.norm;
  return svd_norm_dense(g.mat);
}

namespace {

int linf1(const Displacement& x) { return std::max(std::abs(x[0]), std::abs(x[1])); }
int l11(const Displacement& x) { return std::abs(x[0]) + std::abs(x[1]); }

}  // namespace

double interaction_norm(const Interaction& phi, double lambda, const DecayFunction& f,
                        Metric metric) {
  if (lambda <= 0) throw DomainError("interaction_norm: lambda must be positive");
  auto mdist = [&](const Displacement& x) {
    return metric == Metric::LInf ? linf1(x) : l11(x);
  };
  // Window large enough that any translate of a generator can touch both 0 and x.
  const int w = phi.range + 1;
  double best = 0.0;
  for (int x0 = -w; x0 <= w; ++x0) {
    for (int x1 = (phi.d == 2 ? -w : 0); x1 <= (phi.d == 2 ? w : 0); ++x1) {
      const Displacement x{x0, x1};
      double sum = 0.0;
      for (size_t gi = 0; gi < phi.generators.size(); ++gi) {
        const auto& g = phi.generators[gi];
        const double gnorm = phi.generator_norm(gi);
        // translates a such that {rel + a} contains both 0 and x
        for (int a0 = -2 * w; a0 <= 2 * w; ++a0) {
          for (int a1 = (phi.d == 2 ? -2 * w : 0); a1 <= (phi.d == 2 ? 2 * w : 0); ++a1) {
            bool has0 = false, hasx = false;
            for (const auto& rs : g.rel_sites) {
              if (rs[0] + a0 == 0 && rs[1] + a1 == 0) has0 = true;
              if (rs[0] + a0 == x[0] && rs[1] + a1 == x[1]) hasx = true;
            }
            if (has0 && hasx) sum += gnorm;
          }
        }
      }
      best = std::max(best, sum / f.F_lambda(lambda, double(mdist(x))));
    }
  }
  return best;
}

LRCertificate lr_velocity(const Interaction& phi, const std::vector<double>& lambda_grid,
                          const DecayFunction& f, Metric metric) {
  if (lambda_grid.empty()) throw DomainError("lr_velocity: empty lambda grid");
  LRCertificate cert;
  cert.f_norm = f.norm() + f.norm_tail();
  cert.f_norm_tail = f.norm_tail();
  cert.c_lambda = f.C_bound();
  cert.metric_tag = metric == Metric::LInf ? "linf" : "l1";

  auto v_of = [&](double lam) {
    return 2.0 * interaction_norm(phi, lam, f, metric) * cert.c_lambda / lam;
  };

  std::vector<double> grid = lambda_grid;
  std::sort(grid.begin(), grid.end());
  size_t best = 0;
  for (size_t i = 0; i < grid.size(); ++i) {
    double pn = interaction_norm(phi, grid[i], f, metric);
    double v = 2.0 * pn * cert.c_lambda / grid[i];
    cert.grid_lambda.push_back(grid[i]);
    cert.grid_phi_norm.push_back(pn);
    cert.grid_v.push_back(v);
    if (v < cert.grid_v[best]) best = i;
  }

  // golden-section refinement in log(lambda) between the grid neighbours of the
  // minimizer; the landscape is not assumed convex, this only polishes the best
  // grid point
  double lo = std::log(grid[best > 0 ? best - 1 : best]);
  double hi = std::log(grid[best + 1 < grid.size() ? best + 1 : best]);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = v_of(std::exp(x1)), f2 = v_of(std::exp(x2));
  for (int it = 0; it < 60 && (b - a) > 1e-10; ++it) {
    if (f1 <= f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a); f1 = v_of(std::exp(x1));
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a); f2 = v_of(std::exp(x2));
    }
  }
  double lam = std::exp(0.5 * (a + b));
  double v_ref = v_of(lam);
  if (v_ref <= cert.grid_v[best]) {
    cert.lambda_star = lam;
    cert.v_star = v_ref;
  } else {
    cert.lambda_star = grid[best];
    cert.v_star = cert.grid_v[best];
  }
  cert.phi_norm_star = interaction_norm(phi, cert.lambda_star, f, metric);
  return cert;
}

Hamiltonian::Hamiltonian(const Interaction& phi, const Lattice& lat)
    : lat_(lat), phi_(phi), dim_(int64_t{1} << lat.num_sites()) {
  if (phi.d != lat.dim()) throw DomainError("interaction dimension does not match lattice");
  // Instantiate translation orbits; identical undirected site sets are kept once
  // (relevant only for wrap bonds coinciding with bulk bonds on tiny rings).
  std::set<std::pair<size_t, std::vector<int>>> seen;
  for (size_t gi = 0; gi < phi_.generators.size(); ++gi) {
    const auto& g = phi_.generators[gi];
    for (const Site& anchor : lat.all_sites()) {
      const Displacement shift{anchor[0], anchor[1]};
      bool fits = true;
      std::vector<Site> sites;
      for (const auto& rs : g.rel_sites) {
        Site base{rs[0] + lat.lo(0), lat.dim() == 2 ? rs[1] + lat.lo(1) : 0};
        if (!lat.can_translate(base, {anchor[0] - lat.lo(0), anchor[1] - lat.lo(1)})) {
          fits = false;
          break;
        }
        sites.push_back(lat.translate_site(base, {anchor[0] - lat.lo(0), anchor[1] - lat.lo(1)}));
      }
      if (!fits) continue;
      std::vector<int> idx;
      for (const Site& s : sites) idx.push_back(lat.site_index(s));
      std::vector<int> key = idx;
      std::sort(key.begin(), key.end());
      if (key.size() != std::set<int>(key.begin(), key.end()).size()) continue;  // degenerate wrap
      if (!seen.insert({gi, key}).second) continue;

      // decompose the generator matrix into single-site factor products by
      // expanding in the Pauli basis of each site
      const int ns = int(g.rel_sites.size());
      const int ld = 1 << ns;
      for (int64_t combo = 0; combo < std::pow(4, ns); ++combo) {
        // coefficient = tr(P^dagger M) / 2^ns for the Pauli word P
        int64_t cc = combo;
        std::vector<CMat> ps;
        for (int s = 0; s < ns; ++s) {
          ps.push_back(pauli_mat(int(cc % 4)));
          cc /= 4;
        }
        cx coeff = 0.0;
        for (int r = 0; r < ld; ++r)
          for (int col = 0; col < ld; ++col) {
            cx pw = 1.0;
            for (int s = 0; s < ns; ++s) pw *= ps[s].at((r >> s) & 1, (col >> s) & 1);
            coeff += std::conj(pw) * g.mat.at(r, col);
          }
        coeff /= double(ld);
        if (std::abs(coeff) < 1e-14) continue;
        HTerm term;
        cc = combo;
        for (int s = 0; s < ns; ++s) {
          int ax = int(cc % 4);
          cc /= 4;
          if (ax == 0 && ns > 1) continue;  // identity factors can be dropped (absorbed)
          HTermFactor fct;
          fct.site = idx[s];
          CMat pm = pauli_mat(ax);
          for (int rr = 0; rr < 2; ++rr)
            for (int ccl = 0; ccl < 2; ++ccl) fct.m[rr][ccl] = pm.at(rr, ccl);
          term.factors.push_back(fct);
        }
        if (term.factors.empty()) {
          HTermFactor fct;
          fct.site = idx[0];
          fct.m[0][0] = 1; fct.m[0][1] = 0; fct.m[1][0] = 0; fct.m[1][1] = 1;
          term.factors.push_back(fct);
        }
        // fold the scalar coefficient into the first factor
        for (int rr = 0; rr < 2; ++rr)
          for (int ccl = 0; ccl < 2; ++ccl) term.factors[0].m[rr][ccl] *= coeff;
        terms_.push_back(std::move(term));
      }
    }
  }
}

void Hamiltonian::apply_basis_state(int64_t s, const std::function<void(int64_t, cx)>& emit) const {
  for (const HTerm& t : terms_) {
    // each factor maps the site bit to up to two out-bits; walk the branches
    struct Branch { int64_t state; cx amp; };
    Branch cur[4], nxt[4];
    int ncur = 1, nnxt = 0;
    cur[0] = {s, cx(1.0)};
    bool dead = false;
    for (const HTermFactor& f : t.factors) {
      nnxt = 0;
      for (int b = 0; b < ncur; ++b) {
        const int in = int((cur[b].state >> f.site) & 1);
        for (int out = 0; out < 2; ++out) {
          const cx amp = f.m[out][in];
          if (amp == cx(0.0)) continue;
          int64_t ns2 = (cur[b].state & ~(int64_t{1} << f.site)) | (int64_t(out) << f.site);
          nxt[nnxt++] = {ns2, cur[b].amp * amp};
        }
      }
      if (nnxt == 0) { dead = true; break; }
      for (int b = 0; b < nnxt; ++b) cur[b] = nxt[b];
      ncur = nnxt;
    }
    if (dead) continue;
    for (int b = 0; b < ncur; ++b) emit(cur[b].state, cur[b].amp);
  }
}

void Hamiltonian::apply(const cx* x, cx* y) const {
  std::fill(y, y + dim_, cx(0.0));
  for (int64_t s = 0; s < dim_; ++s) {
    if (x[s] == cx(0.0)) continue;
    const cx xs = x[s];
    apply_basis_state(s, [&](int64_t s2, cx amp) { y[s2] += amp * xs; });
  }
}

LocalOperator Hamiltonian::as_local_operator() const {
  if (lat_.num_sites() > 16)
    throw DomainError("Hamiltonian too large to materialize; use matrix-free apply");
  SpMat m;
  m.rows = m.cols = int(dim_);
  for (int64_t s = 0; s < dim_; ++s)
    apply_basis_state(s, [&](int64_t s2, cx amp) { m.add(int(s2), int(s), amp); });
  m.compress(0.0);
  return LocalOperator(lat_, Region::full(lat_), std::move(m), "H[" + phi_.name + "]");
}

Hamiltonian build_hamiltonian(const Interaction& phi, const Lattice& lat) {
  return Hamiltonian(phi, lat);
}

}  // namespace hrlab
