#include "core/lanczos.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hrlab {

std::vector<cx> random_unit_vector(int64_t dim, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<cx> v(dim);
  for (auto& z : v) z = cx(g(rng), g(rng));
  double n = nrm2(v);
  for (auto& z : v) z /= n;
  return v;
}

namespace {

// Tridiagonal eigensolve helper on the Lanczos coefficients.
HermEig tridiag_eig(const std::vector<double>& alpha, const std::vector<double>& beta) {
  const int m = static_cast<int>(alpha.size());
  CMat t(m, m);
  for (int i = 0; i < m; ++i) {
    t.at(i, i) = alpha[i];
    if (i + 1 < m) {
      t.at(i, i + 1) = beta[i];
      t.at(i + 1, i) = beta[i];
    }
  }
  return eigh(t);
}

}  // namespace

LowestEigs lanczos_lowest(const MatVec& av, int64_t dim, int k, const LanczosOptions& opt,
                          bool want_vectors) {
  if (dim <= 0) throw DomainError("lanczos_lowest: empty space");
  k = std::min<int64_t>(k, dim);
  const int mmax = static_cast<int>(std::min<int64_t>(opt.max_iter, dim));

  std::vector<std::vector<cx>> basis;
  basis.reserve(mmax);
  std::vector<double> alpha, beta;
  std::vector<cx> v = random_unit_vector(dim, opt.seed);
  std::vector<cx> w(dim);

  double prev = 1e300;
  int m = 0;
  for (; m < mmax; ++m) {
    basis.push_back(v);
    av(v.data(), w.data());
    cx a = dot(v, w);
    alpha.push_back(a.real());
    // full reorthogonalization, twice for stability
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(-dot(b, w), b, w);
    double bnorm = nrm2(w);
    if (m + 1 >= k && (m % 4 == 3 || bnorm < 1e-14 || m + 1 == mmax)) {
      auto te = tridiag_eig(alpha, beta);
      double cur = te.evals[std::min<size_t>(k - 1, te.evals.size() - 1)];
      if (std::abs(cur - prev) < opt.tol * std::max(1.0, std::abs(cur)) || bnorm < 1e-14) {
        m += 1;
        break;
      }
      prev = cur;
    }
    if (bnorm < 1e-14) {
      m += 1;
      break;
    }
    beta.push_back(bnorm);
    for (auto& z : w) z /= bnorm;
    v = w;
  }

  auto te = tridiag_eig(alpha, beta);
  LowestEigs out;
  const int got = std::min<int>(k, static_cast<int>(te.evals.size()));
  out.evals.assign(te.evals.begin(), te.evals.begin() + got);
  if (want_vectors) {
    for (int j = 0; j < got; ++j) {
      std::vector<cx> rv(dim, 0.0);
      for (size_t i = 0; i < basis.size(); ++i) axpy(te.vecs.at(static_cast<int>(i), j), basis[i], rv);
      double n = nrm2(rv);
      for (auto& z : rv) z /= n;
      out.evecs.push_back(std::move(rv));
    }
  }
  return out;
}

double lanczos_extreme_abs(const MatVec& av, int64_t dim, double rel_tol, int max_iter,
                           uint64_t seed) {
  if (dim <= 0) return 0.0;
  const int mmax = static_cast<int>(std::min<int64_t>(max_iter, dim));
  std::vector<std::vector<cx>> basis;
  std::vector<double> alpha, beta;
  std::vector<cx> v = random_unit_vector(dim, seed);
  std::vector<cx> w(dim);
  double prev = -1.0;
  for (int m = 0; m < mmax; ++m) {
    basis.push_back(v);
    av(v.data(), w.data());
    alpha.push_back(dot(v, w).real());
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) axpy(-dot(b, w), b, w);
    double bnorm = nrm2(w);
    if (m % 2 == 1 || bnorm < 1e-13 || m + 1 == mmax) {
      auto te = tridiag_eig(alpha, beta);
      double cur = std::max(std::abs(te.evals.front()), std::abs(te.evals.back()));
      if (bnorm < 1e-13) return cur;
      if (prev >= 0 && std::abs(cur - prev) <= rel_tol * std::max(cur, 1e-300)) return cur;
      prev = cur;
    }
    beta.push_back(bnorm);
    for (auto& z : w) z /= bnorm;
    v = w;
  }
  return prev < 0 ? 0.0 : prev;
}

double lanczos_largest_sv(const MatVec& av, const MatVec& ahv, int64_t dim_domain, double rel_tol,
                          int max_iter, uint64_t seed) {
  std::vector<cx> tmp;
  MatVec gram = [&](const cx* x, cx* y) {
    if (static_cast<int64_t>(tmp.size()) != dim_domain) tmp.assign(dim_domain, 0.0);
    // tmp may be larger for rectangular operators; here we only support square ones,
    // which covers every use in this codebase.
    av(x, tmp.data());
    ahv(tmp.data(), y);
  };
  double lam = lanczos_extreme_abs(gram, dim_domain, rel_tol, max_iter, seed);
  return std::sqrt(std::max(0.0, lam));
}

void krylov_expi(const MatVec& hv, std::vector<cx>& v, double t, double sign, int m, double tol) {
  if (t == 0.0) return;
  const int64_t dim = static_cast<int64_t>(v.size());
  m = static_cast<int>(std::min<int64_t>(m, dim));
  double vnorm0 = nrm2(v);
  if (vnorm0 == 0.0) return;

  // Substep so that ||H||*dt stays moderate for the fixed Krylov dimension.
  // ||H|| is probed once with a short Lanczos run.
  double hnorm = lanczos_extreme_abs(hv, dim, 1e-2, 30, 0xabcdef1234567ull);
  int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(t) * std::max(hnorm, 1e-30) / (0.5 * m))));
  double dt = t / nsteps;

  std::vector<std::vector<cx>> basis;
  std::vector<cx> w(dim);
  for (int step = 0; step < nsteps; ++step) {
    double beta0 = nrm2(v);
    basis.clear();
    std::vector<double> alpha, beta;
    std::vector<cx> q = v;
    for (auto& z : q) z /= beta0;
    int mk = 0;
    for (; mk < m; ++mk) {
      basis.push_back(q);
      hv(q.data(), w.data());
      alpha.push_back(dot(q, w).real());
      for (int pass = 0; pass < 2; ++pass)
        for (const auto& b : basis) axpy(-dot(b, w), b, w);
      double bn = nrm2(w);
      if (bn < tol * std::max(1.0, hnorm)) {
        mk += 1;
        break;
      }
      beta.push_back(bn);
      q = w;
      for (auto& z : q) z /= bn;
    }
    auto te = tridiag_eig(alpha, beta);
    const int mdim = static_cast<int>(alpha.size());
    // coef = V exp(i sign E dt) V^H e1 * beta0
    std::vector<cx> coef(mdim, 0.0);
    for (int j = 0; j < mdim; ++j) {
      cx phase = std::exp(cx(0.0, sign * te.evals[j] * dt));
      cx vj0 = std::conj(te.vecs.at(0, j));
      for (int i = 0; i < mdim; ++i) coef[i] += te.vecs.at(i, j) * phase * vj0;
    }
    std::fill(v.begin(), v.end(), cx(0.0));
    for (int i = 0; i < mdim; ++i) axpy(beta0 * coef[i], basis[i], v);
  }
}

}  // namespace hrlab
