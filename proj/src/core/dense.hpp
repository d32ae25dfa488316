#pragma once

#include <vector>

#include "core/types.hpp"

namespace hrlab {

// Row-major dense complex matrix.
struct CMat {
  int rows = 0;
  int cols = 0;
  std::vector<cx> a;

  CMat() = default;
  CMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  cx& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const cx& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  cx* row(int i) { return a.data() + static_cast<size_t>(i) * cols; }
  const cx* row(int i) const { return a.data() + static_cast<size_t>(i) * cols; }

  static CMat identity(int n);
  CMat adjoint() const;
  double max_abs() const;
  double frobenius() const;
  bool is_hermitian(double tol) const;
};

CMat operator+(const CMat& x, const CMat& y);
CMat operator-(const CMat& x, const CMat& y);
CMat operator*(cx s, const CMat& x);

// c = alpha * op(a) * op(b) + beta * c, op in {'N','C'} (C = conjugate transpose).
void gemm(char opa, char opb, cx alpha, const CMat& a, const CMat& b, cx beta, CMat& c);
CMat matmul(const CMat& a, const CMat& b);

// y = alpha * op(a) * x + beta * y
void gemv(char opa, cx alpha, const CMat& a, const cx* x, cx beta, cx* y);

struct HermEig {
  std::vector<double> evals;  // ascending
  CMat vecs;                  // column k (vecs.at(i,k)) is the k-th eigenvector
};

// Dense Hermitian eigendecomposition (LAPACK zheevd). Throws NumericalError on failure.
HermEig eigh(const CMat& m);

// Largest singular value by dense SVD of the Gram matrix.
double svd_norm_dense(const CMat& m);

// Vector helpers.
double nrm2(const std::vector<cx>& v);
cx dot(const std::vector<cx>& x, const std::vector<cx>& y);  // conj(x) . y
void axpy(cx alpha, const std::vector<cx>& x, std::vector<cx>& y);

}  // namespace hrlab
