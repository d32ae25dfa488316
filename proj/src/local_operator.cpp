#include "local_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/lanczos.hpp"

namespace hrlab {

void SpMat::compress(double drop_tol) {
  std::vector<size_t> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
    return r[a] != r[b] ? r[a] < r[b] : c[a] < c[b];
  });
  std::vector<int> nr, nc;
  std::vector<cx> nv;
  nr.reserve(v.size());
  for (size_t t : idx) {
    if (!nv.empty() && nr.back() == r[t] && nc.back() == c[t]) {
      nv.back() += v[t];
    } else {
      nr.push_back(r[t]);
      nc.push_back(c[t]);
      nv.push_back(v[t]);
    }
  }
  r.clear(); c.clear(); v.clear();
  for (size_t t = 0; t < nv.size(); ++t) {
    if (std::abs(nv[t]) > drop_tol) {
      r.push_back(nr[t]);
      c.push_back(nc[t]);
      v.push_back(nv[t]);
    }
  }
}

CMat SpMat::to_dense() const {
  CMat m(rows, cols);
  for (size_t t = 0; t < v.size(); ++t) m.at(r[t], c[t]) += v[t];
  return m;
}

SpMat SpMat::from_dense(const CMat& m, double drop_tol) {
  SpMat s;
  s.rows = m.rows;
  s.cols = m.cols;
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (std::abs(m.at(i, j)) > drop_tol) s.add(i, j, m.at(i, j));
  return s;
}

SpMat SpMat::adjoint() const {
  SpMat s;
  s.rows = cols;
  s.cols = rows;
  for (size_t t = 0; t < v.size(); ++t) s.add(c[t], r[t], std::conj(v[t]));
  s.compress();
  return s;
}

void SpMat::apply(const cx* x, cx* y) const {
  std::fill(y, y + rows, cx(0.0));
  for (size_t t = 0; t < v.size(); ++t) y[r[t]] += v[t] * x[c[t]];
}

void SpMat::apply_adjoint(const cx* x, cx* y) const {
  std::fill(y, y + cols, cx(0.0));
  for (size_t t = 0; t < v.size(); ++t) y[c[t]] += std::conj(v[t]) * x[r[t]];
}

double SpMat::max_abs() const {
  double m = 0.0;
  for (const cx& z : v) m = std::max(m, std::abs(z));
  return m;
}

SpMat sp_mul(const SpMat& a, const SpMat& b) {
  // per-row accumulation against a dense scratch row; fine for the small local
  // dimensions this is used at
  SpMat out;
  out.rows = a.rows;
  out.cols = b.cols;
  std::vector<std::vector<std::pair<int, cx>>> brows(b.rows);
  for (size_t t = 0; t < b.v.size(); ++t) brows[b.r[t]].push_back({b.c[t], b.v[t]});
  std::vector<cx> scratch(b.cols, 0.0);
  std::vector<int> touched;
  int cur = -1;
  auto flush = [&]() {
    std::sort(touched.begin(), touched.end());
    for (int j : touched) {
      if (std::abs(scratch[j]) > 0.0) out.add(cur, j, scratch[j]);
      scratch[j] = 0.0;
    }
    touched.clear();
  };
  // a assumed row-sorted (compress() guarantees it)
  for (size_t t = 0; t < a.v.size(); ++t) {
    if (a.r[t] != cur) {
      if (cur >= 0) flush();
      cur = a.r[t];
    }
    for (const auto& [j, bv] : brows[a.c[t]]) {
      if (scratch[j] == cx(0.0)) touched.push_back(j);
      scratch[j] += a.v[t] * bv;
    }
  }
  if (cur >= 0) flush();
  out.compress();
  return out;
}

SpMat sp_add(const SpMat& a, cx beta, const SpMat& b) {
  SpMat out = a;
  for (size_t t = 0; t < b.v.size(); ++t) out.add(b.r[t], b.c[t], beta * b.v[t]);
  out.compress();
  return out;
}

LocalOperator::LocalOperator(Lattice lat, Region support, SpMat m, std::string label)
    : lat_(std::move(lat)), support_(std::move(support)), label_(std::move(label)) {
  dim_ = int64_t{1} << support_.size();
  if (m.rows != dim_ || m.cols != dim_)
    throw DomainError("operator dimension does not match 2^|support|");
  m.compress();
  sparse_ = std::move(m);
  normalize_storage();
}

LocalOperator::LocalOperator(Lattice lat, Region support, CMat m, std::string label)
    : lat_(std::move(lat)), support_(std::move(support)), label_(std::move(label)) {
  dim_ = int64_t{1} << support_.size();
  if (m.rows != dim_ || m.cols != dim_)
    throw DomainError("operator dimension does not match 2^|support|");
  dense_ = std::move(m);
  normalize_storage();
}

void LocalOperator::normalize_storage() {
  // operators denser than 25% nonzeros are stored dense
  if (sparse_) {
    double fill = double(sparse_->nnz()) / (double(dim_) * double(dim_));
    if (fill > 0.25 && dim_ <= 4096) {
      dense_ = sparse_->to_dense();
      sparse_.reset();
    }
  } else if (dense_) {
    size_t nnz = 0;
    for (const cx& z : dense_->a)
      if (z != cx(0.0)) ++nnz;
    if (double(nnz) < 0.25 * double(dense_->a.size())) {
      sparse_ = SpMat::from_dense(*dense_);
      dense_.reset();
    }
  }
}

const CMat& LocalOperator::dense() const {
  if (!dense_) throw DomainError("operator stored sparse");
  return *dense_;
}

const SpMat& LocalOperator::sparse() const {
  if (!sparse_) throw DomainError("operator stored dense");
  return *sparse_;
}

CMat LocalOperator::to_dense_matrix() const { return dense_ ? *dense_ : sparse_->to_dense(); }

SpMat LocalOperator::to_sparse_matrix() const {
  return sparse_ ? *sparse_ : SpMat::from_dense(*dense_);
}

cx LocalOperator::element(int64_t i, int64_t j) const {
  if (dense_) return dense_->at(int(i), int(j));
  cx acc = 0.0;
  for (size_t t = 0; t < sparse_->v.size(); ++t)
    if (sparse_->r[t] == i && sparse_->c[t] == j) acc += sparse_->v[t];
  return acc;
}

LocalOperator LocalOperator::identity(const Lattice& lat, const Region& support) {
  SpMat m;
  m.rows = m.cols = int(int64_t{1} << support.size());
  for (int i = 0; i < m.rows; ++i) m.add(i, i, 1.0);
  return LocalOperator(lat, support, std::move(m), "1");
}

LocalOperator LocalOperator::zero(const Lattice& lat, const Region& support) {
  SpMat m;
  m.rows = m.cols = int(int64_t{1} << support.size());
  return LocalOperator(lat, support, std::move(m), "0");
}

LocalOperator LocalOperator::pauli(const Lattice& lat, const Site& site, int axis) {
  SpMat m;
  m.rows = m.cols = 2;
  switch (axis) {
    case 1: m.add(0, 1, 1.0); m.add(1, 0, 1.0); break;
    case 2: m.add(0, 1, cx(0, -1)); m.add(1, 0, cx(0, 1)); break;
    case 3: m.add(0, 0, 1.0); m.add(1, 1, -1.0); break;
    default: throw DomainError("pauli axis must be 1, 2 or 3");
  }
  return LocalOperator(lat, Region::single(lat, site), std::move(m),
                       "sigma" + std::to_string(axis));
}

LocalOperator LocalOperator::pauli_string(const Lattice& lat, const std::vector<Site>& sites,
                                          const std::vector<int>& axes) {
  if (sites.empty() || sites.size() != axes.size())
    throw DomainError("pauli_string: sites/axes mismatch");
  LocalOperator acc = pauli(lat, sites[0], axes[0]);
  for (size_t i = 1; i < sites.size(); ++i) {
    LocalOperator next = pauli(lat, sites[i], axes[i]);
    acc = multiply(acc, next);
  }
  return acc;
}

bool LocalOperator::check_hermitian(double tol) const {
  if (dense_) return dense_->is_hermitian(tol);
  SpMat d = sp_add(*sparse_, -1.0, sparse_->adjoint());
  return d.max_abs() <= tol;
}

cx LocalOperator::trace() const {
  cx t = 0.0;
  if (dense_) {
    for (int i = 0; i < dense_->rows; ++i) t += dense_->at(i, i);
  } else {
    for (size_t k = 0; k < sparse_->v.size(); ++k)
      if (sparse_->r[k] == sparse_->c[k]) t += sparse_->v[k];
  }
  return t;
}

LocalOperator LocalOperator::adjoint() const {
  if (dense_) return LocalOperator(lat_, support_, dense_->adjoint(), label_ + "^*");
  return LocalOperator(lat_, support_, sparse_->adjoint(), label_ + "^*");
}

LocalOperator LocalOperator::scaled(cx s) const {
  if (dense_) {
    CMat m = *dense_;
    for (auto& z : m.a) z *= s;
    return LocalOperator(lat_, support_, std::move(m), label_);
  }
  SpMat m = *sparse_;
  for (auto& z : m.v) z *= s;
  return LocalOperator(lat_, support_, std::move(m), label_);
}

namespace {

// Bit positions of `inner` sites inside the sorted site list of `outer`.
std::vector<int> bit_positions(const Region& inner, const Region& outer) {
  std::vector<int> pos;
  pos.reserve(inner.size());
  const auto& os = outer.sites();
  for (const Site& s : inner.sites()) {
    auto it = std::lower_bound(os.begin(), os.end(), s);
    if (it == os.end() || *it != s) throw DomainError("support not contained in target");
    pos.push_back(int(it - os.begin()));
  }
  return pos;
}

// Scatter the bits of `local` into positions `pos`, OR with `rest`.
inline int64_t scatter_bits(int64_t local, const std::vector<int>& pos, int64_t rest) {
  int64_t out = rest;
  for (size_t k = 0; k < pos.size(); ++k)
    if ((local >> k) & 1) out |= int64_t{1} << pos[k];
  return out;
}

// Enumerate values of the complementary bits (all bits not in pos) of an m-bit word.
std::vector<int64_t> complement_masks(int nbits, const std::vector<int>& pos) {
  int64_t used = 0;
  for (int p : pos) used |= int64_t{1} << p;
  std::vector<int> freebits;
  for (int b = 0; b < nbits; ++b)
    if (!((used >> b) & 1)) freebits.push_back(b);
  std::vector<int64_t> out;
  out.reserve(int64_t{1} << freebits.size());
  for (int64_t g = 0; g < (int64_t{1} << freebits.size()); ++g) {
    int64_t m = 0;
    for (size_t k = 0; k < freebits.size(); ++k)
      if ((g >> k) & 1) m |= int64_t{1} << freebits[k];
    out.push_back(m);
  }
  return out;
}

}  // namespace

LocalOperator embed(const LocalOperator& a, const Region& target) {
  if (!target.contains(a.support_)) throw DomainError("embed: support not contained in target");
  if (target == a.support_) return a;
  const int nbits = int(target.size());
  auto pos = bit_positions(a.support_, target);
  auto gammas = complement_masks(nbits, pos);
  SpMat src = a.to_sparse_matrix();
  SpMat out;
  out.rows = out.cols = int(int64_t{1} << nbits);
  for (size_t t = 0; t < src.v.size(); ++t) {
    for (int64_t g : gammas)
      out.add(int(scatter_bits(src.r[t], pos, g)), int(scatter_bits(src.c[t], pos, g)), src.v[t]);
  }
  return LocalOperator(a.lat_, target, std::move(out), a.label_);
}

LocalOperator translate(const LocalOperator& a, const Displacement& x) {
  Region moved = translate(a.lat_, a.support_, x);  // throws if an open lattice is escaped
  // Region order may change under wrapping; conjugate by the induced permutation.
  const auto& old_sites = a.support_.sites();
  std::vector<int> perm(old_sites.size());  // old bit k -> new bit perm[k]
  const auto& new_sites = moved.sites();
  for (size_t k = 0; k < old_sites.size(); ++k) {
    Site ns = a.lat_.translate_site(old_sites[k], x);
    auto it = std::lower_bound(new_sites.begin(), new_sites.end(), ns);
    perm[k] = int(it - new_sites.begin());
  }
  auto permute = [&](int64_t idx) {
    int64_t out = 0;
    for (size_t k = 0; k < perm.size(); ++k)
      if ((idx >> k) & 1) out |= int64_t{1} << perm[k];
    return out;
  };
  if (a.is_dense()) {
    std::vector<int64_t> pmap(a.dim_);
    for (int64_t i = 0; i < a.dim_; ++i) pmap[i] = permute(i);
    const CMat& src = a.dense();
    CMat out(int(a.dim_), int(a.dim_));
    for (int64_t i = 0; i < a.dim_; ++i)
      for (int64_t j = 0; j < a.dim_; ++j)
        out.at(int(pmap[i]), int(pmap[j])) = src.at(int(i), int(j));
    return LocalOperator(a.lat_, moved, std::move(out), a.label_);
  }
  SpMat src = a.to_sparse_matrix();
  SpMat out;
  out.rows = out.cols = int(a.dim_);
  for (size_t t = 0; t < src.v.size(); ++t)
    out.add(int(permute(src.r[t])), int(permute(src.c[t])), src.v[t]);
  return LocalOperator(a.lat_, moved, std::move(out), a.label_);
}

LocalOperator commutator(const LocalOperator& a, const LocalOperator& b) {
  Region u = region_union(a.lattice(), a.support(), b.support());
  LocalOperator ae = embed(a, u), be = embed(b, u);
  if (ae.is_dense() || be.is_dense()) {
    CMat am = ae.to_dense_matrix(), bm = be.to_dense_matrix();
    CMat ab(am.rows, am.cols), ba(am.rows, am.cols);
    gemm('N', 'N', 1.0, am, bm, 0.0, ab);
    gemm('N', 'N', 1.0, bm, am, 0.0, ba);
    return LocalOperator(a.lattice(), u, ab - ba, "[" + a.label() + "," + b.label() + "]");
  }
  SpMat comm = sp_add(sp_mul(ae.sparse(), be.sparse()), -1.0, sp_mul(be.sparse(), ae.sparse()));
  return LocalOperator(a.lattice(), u, std::move(comm), "[" + a.label() + "," + b.label() + "]");
}

LocalOperator add(const LocalOperator& a, cx beta, const LocalOperator& b) {
  Region u = region_union(a.lattice(), a.support(), b.support());
  LocalOperator ae = embed(a, u), be = embed(b, u);
  if (ae.is_dense() || be.is_dense()) {
    CMat m = ae.to_dense_matrix();
    CMat bm = be.to_dense_matrix();
    for (size_t i = 0; i < m.a.size(); ++i) m.a[i] += beta * bm.a[i];
    return LocalOperator(a.lattice(), u, std::move(m), a.label());
  }
  return LocalOperator(a.lattice(), u, sp_add(ae.sparse(), beta, be.sparse()), a.label());
}

LocalOperator multiply(const LocalOperator& a, const LocalOperator& b) {
  Region u = region_union(a.lattice(), a.support(), b.support());
  LocalOperator ae = embed(a, u), be = embed(b, u);
  if (ae.is_dense() || be.is_dense()) {
    CMat m(int(ae.dim()), int(ae.dim()));
    CMat am = ae.to_dense_matrix(), bm = be.to_dense_matrix();
    gemm('N', 'N', 1.0, am, bm, 0.0, m);
    return LocalOperator(a.lattice(), u, std::move(m), a.label() + b.label());
  }
  return LocalOperator(a.lattice(), u, sp_mul(ae.sparse(), be.sparse()), a.label() + b.label());
}

double op_norm(const LocalOperator& a) {
  const int64_t dense_cap = int64_t{1} << 12;
  if (a.dim() <= dense_cap) {
    return svd_norm_dense(a.to_dense_matrix());
  }
  SpMat sp = a.to_sparse_matrix();
  MatVec av = [&](const cx* x, cx* y) { sp.apply(x, y); };
  MatVec ahv = [&](const cx* x, cx* y) { sp.apply_adjoint(x, y); };
  double nrm = lanczos_largest_sv(av, ahv, a.dim(), 1e-10, 400);
  if (!std::isfinite(nrm))
    throw NumericalError("op_norm: iterative largest-singular-value solver failed");
  return nrm;
}

void LocalOperator::apply_embedded(const cx* x, cx* y) const {
  Region full = Region::full(lat_);
  auto pos = bit_positions(support_, full);
  const int64_t fdim = int64_t{1} << lat_.num_sites();
  std::fill(y, y + fdim, cx(0.0));
  SpMat src = to_sparse_matrix();
  auto gammas = complement_masks(int(lat_.num_sites()), pos);
  for (size_t t = 0; t < src.v.size(); ++t) {
    const int64_t rb = scatter_bits(src.r[t], pos, 0);
    const int64_t cb = scatter_bits(src.c[t], pos, 0);
    const cx val = src.v[t];
    for (int64_t g : gammas) y[rb | g] += val * x[cb | g];
  }
}

LocalOperator conditional_expectation(const LocalOperator& a, const Region& target) {
  if (!a.support().contains(target))
    throw DomainError("conditional_expectation: embed the operator over the target first");
  if (target == a.support()) return a;
  auto pos = bit_positions(target, a.support());
  const int m = int(target.size());
  const int csize = int(a.support().size()) - m;
  const double w = 1.0 / double(int64_t{1} << csize);
  int64_t posmask = 0;
  for (int p : pos) posmask |= int64_t{1} << p;

  auto extract = [&](int64_t idx) {
    int64_t out = 0;
    for (int k = 0; k < m; ++k)
      if ((idx >> pos[k]) & 1) out |= int64_t{1} << k;
    return out;
  };

  SpMat src = a.to_sparse_matrix();
  SpMat out;
  out.rows = out.cols = int(int64_t{1} << m);
  for (size_t t = 0; t < src.v.size(); ++t) {
    const int64_t rg = src.r[t] & ~posmask, cg = src.c[t] & ~posmask;
    if (rg != cg) continue;  // off-diagonal in the traced factor
    out.add(int(extract(src.r[t])), int(extract(src.c[t])), w * src.v[t]);
  }
  out.compress(1e-300);
  return LocalOperator(a.lattice(), target, std::move(out), "Pi(" + a.label() + ")");
}

}  // namespace hrlab
