#include "core/dense.hpp"

#include <algorithm>
#include <cmath>

#define LAPACK_COMPLEX_CPP
#include <cblas.h>
#include <lapacke.h>

namespace hrlab {

CMat CMat::identity(int n) {
  CMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

CMat CMat::adjoint() const {
  CMat m(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.at(j, i) = std::conj(at(i, j));
  return m;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const cx& z : a) m = std::max(m, std::abs(z));
  return m;
}

double CMat::frobenius() const {
  double s = 0.0;
  for (const cx& z : a) s += std::norm(z);
  return std::sqrt(s);
}

bool CMat::is_hermitian(double tol) const {
  if (rows != cols) return false;
  for (int i = 0; i < rows; ++i)
    for (int j = i; j < cols; ++j)
      if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
  return true;
}

CMat operator+(const CMat& x, const CMat& y) {
  CMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

CMat operator-(const CMat& x, const CMat& y) {
  CMat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

CMat operator*(cx s, const CMat& x) {
  CMat r = x;
  for (auto& z : r.a) z *= s;
  return r;
}

void gemm(char opa, char opb, cx alpha, const CMat& a, const CMat& b, cx beta, CMat& c) {
  const CBLAS_TRANSPOSE ta = (opa == 'C') ? CblasConjTrans : CblasNoTrans;
  const CBLAS_TRANSPOSE tb = (opb == 'C') ? CblasConjTrans : CblasNoTrans;
  const int m = (opa == 'C') ? a.cols : a.rows;
  const int k = (opa == 'C') ? a.rows : a.cols;
  const int n = (opb == 'C') ? b.rows : b.cols;
  if (c.rows != m || c.cols != n) c = CMat(m, n);
  cblas_zgemm(CblasRowMajor, ta, tb, m, n, k, &alpha, a.a.data(), a.cols, b.a.data(), b.cols,
              &beta, c.a.data(), c.cols);
}

CMat matmul(const CMat& a, const CMat& b) {
  CMat c(a.rows, b.cols);
  gemm('N', 'N', 1.0, a, b, 0.0, c);
  return c;
}

void gemv(char opa, cx alpha, const CMat& a, const cx* x, cx beta, cx* y) {
  const CBLAS_TRANSPOSE ta = (opa == 'C') ? CblasConjTrans : CblasNoTrans;
  cblas_zgemv(CblasRowMajor, ta, a.rows, a.cols, &alpha, a.a.data(), a.cols, x, 1, &beta, y, 1);
}

HermEig eigh(const CMat& m) {
  HermEig r;
  r.vecs = m;
  r.evals.resize(m.rows);
  int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', m.rows,
                            reinterpret_cast<lapack_complex_double*>(r.vecs.a.data()), m.cols,
                            r.evals.data());
  if (info != 0)
    throw NumericalError("zheevd failed, info=" + std::to_string(info) + " n=" +
                         std::to_string(m.rows));
  return r;
}

double svd_norm_dense(const CMat& m) {
  // ||m|| = sqrt(lambda_max(m^H m)); the Gram matrix keeps us on the Hermitian path.
  const CMat& tall = m;
  CMat g;
  if (m.rows >= m.cols) {
    g = CMat(m.cols, m.cols);
    gemm('C', 'N', 1.0, tall, tall, 0.0, g);
  } else {
    g = CMat(m.rows, m.rows);
    gemm('N', 'C', 1.0, tall, tall, 0.0, g);
  }
  std::vector<double> w(g.rows);
  int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', g.rows,
                            reinterpret_cast<lapack_complex_double*>(g.a.data()), g.cols, w.data());
  if (info != 0) throw NumericalError("zheevd (gram) failed, info=" + std::to_string(info));
  return std::sqrt(std::max(0.0, w.back()));
}

double nrm2(const std::vector<cx>& v) {
  return cblas_dznrm2(static_cast<int>(v.size()), v.data(), 1);
}

cx dot(const std::vector<cx>& x, const std::vector<cx>& y) {
  cx r;
  cblas_zdotc_sub(static_cast<int>(x.size()), x.data(), 1, y.data(), 1, &r);
  return r;
}

void axpy(cx alpha, const std::vector<cx>& x, std::vector<cx>& y) {
  cblas_zaxpy(static_cast<int>(x.size()), &alpha, x.data(), 1, y.data(), 1);
}

}  // namespace hrlab
