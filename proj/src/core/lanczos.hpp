#pragma once

#include <functional>
#include <vector>

#include "core/dense.hpp"
#include "core/types.hpp"

namespace hrlab {

using MatVec = std::function<void(const cx* x, cx* y)>;  // y = A x

struct LanczosOptions {
  int max_iter = 300;
  double tol = 1e-12;
  uint64_t seed = 0x9e3779b97f4a7c15ull;
};

struct LowestEigs {
  std::vector<double> evals;            // ascending, size k
  std::vector<std::vector<cx>> evecs;   // Ritz vectors, size k (may be empty if not requested)
};

// Smallest k eigenvalues (and Ritz vectors) of a Hermitian operator by Lanczos with
// full reorthogonalization.
LowestEigs lanczos_lowest(const MatVec& av, int64_t dim, int k, const LanczosOptions& opt = {},
                          bool want_vectors = true);

// Largest |eigenvalue| of a Hermitian operator == its operator norm.
double lanczos_extreme_abs(const MatVec& av, int64_t dim, double rel_tol = 1e-6,
                           int max_iter = 120, uint64_t seed = 0x2545f4914f6cdd1dull);

// Largest singular value of a general operator via Lanczos on A^H A.
double lanczos_largest_sv(const MatVec& av, const MatVec& ahv, int64_t dim_domain,
                          double rel_tol = 1e-6, int max_iter = 120,
                          uint64_t seed = 0x6a09e667f3bcc909ull);

// v <- exp(i * sign * H * t) v for Hermitian H given by matvec, Lanczos propagator with
// internal substepping. Norm-preserving to ~1e-12 for the defaults.
void krylov_expi(const MatVec& hv, std::vector<cx>& v, double t, double sign,
                 int m = 40, double tol = 1e-12);

std::vector<cx> random_unit_vector(int64_t dim, uint64_t seed);

}  // namespace hrlab
