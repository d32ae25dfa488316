#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/dense.hpp"
#include "lattice.hpp"

namespace hrlab {

// Sparse complex matrix, COO entries sorted by (row, col), unique.
struct SpMat {
  int rows = 0, cols = 0;
  std::vector<int> r, c;
  std::vector<cx> v;

  size_t nnz() const { return v.size(); }
  void add(int i, int j, cx z) { r.push_back(i); c.push_back(j); v.push_back(z); }
  void compress(double drop_tol = 0.0);  // sort, merge duplicates, drop tiny entries
  CMat to_dense() const;
  static SpMat from_dense(const CMat& m, double drop_tol = 0.0);
  SpMat adjoint() const;
  void apply(const cx* x, cx* y) const;       // y = M x
  void apply_adjoint(const cx* x, cx* y) const;
  double max_abs() const;
};

SpMat sp_mul(const SpMat& a, const SpMat& b);
SpMat sp_add(const SpMat& a, cx beta, const SpMat& b);  // a + beta*b

// Concrete stand-in for an element of the quasilocal algebra: a matrix of
// dimension 2^|support| together with its declared support region.
// Basis convention: for support sites s_0 < s_1 < ... (region order), bit k of a
// basis index is the state of site s_k; bit 0 means sigma^3 = +1.
class LocalOperator {
 public:
  LocalOperator() = default;
  LocalOperator(Lattice lat, Region support, SpMat m, std::string label = "");
  LocalOperator(Lattice lat, Region support, CMat m, std::string label = "");

  static LocalOperator identity(const Lattice& lat, const Region& support);
  static LocalOperator zero(const Lattice& lat, const Region& support);
  // Single-site Pauli sigma^(axis), axis in {1,2,3}.
  static LocalOperator pauli(const Lattice& lat, const Site& site, int axis);
  // Product of single-site Paulis, e.g. sigma1 at x times sigma1 at y.
  static LocalOperator pauli_string(const Lattice& lat, const std::vector<Site>& sites,
                                    const std::vector<int>& axes);

  const Lattice& lattice() const { return lat_; }
  const Region& support() const { return support_; }
  const std::string& label() const { return label_; }
  void set_label(std::string l) { label_ = std::move(l); }
  int64_t dim() const { return dim_; }

  bool is_dense() const { return dense_.has_value(); }
  const CMat& dense() const;
  const SpMat& sparse() const;
  CMat to_dense_matrix() const;
  SpMat to_sparse_matrix() const;

  cx element(int64_t i, int64_t j) const;
  LocalOperator adjoint() const;
  LocalOperator scaled(cx s) const;
  bool check_hermitian(double tol = 1e-12) const;
  cx trace() const;

  // Apply (this tensor identity on the rest of `lat`) to a full-lattice vector.
  void apply_embedded(const cx* x, cx* y) const;

  friend LocalOperator embed(const LocalOperator& a, const Region& target);
  friend LocalOperator translate(const LocalOperator& a, const Displacement& x);

 private:
  Lattice lat_ = Lattice::chain(2, Boundary::Open);
  Region support_;
  std::string label_;
  int64_t dim_ = 0;
  std::optional<SpMat> sparse_;
  std::optional<CMat> dense_;

  void normalize_storage();  // 25% fill rule
};

LocalOperator embed(const LocalOperator& a, const Region& target);
LocalOperator translate(const LocalOperator& a, const Displacement& x);
LocalOperator commutator(const LocalOperator& a, const LocalOperator& b);
LocalOperator add(const LocalOperator& a, cx beta, const LocalOperator& b);
LocalOperator multiply(const LocalOperator& a, const LocalOperator& b);

// Operator norm (largest singular value). Dense SVD below dimension 2^12, iterative
// largest-singular-value Lanczos above, relative tolerance 1e-10.
double op_norm(const LocalOperator& a);

// Conditional expectation onto `target` with the tracial state on the complement:
// Pi(A) = (id_target (x) tr/2^{|comp|})(A). Requires target subset of a's support
// (embed first if needed); output is supported in target.
LocalOperator conditional_expectation(const LocalOperator& a, const Region& target);

}  // namespace hrlab
