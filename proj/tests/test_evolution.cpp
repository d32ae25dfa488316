#include <doctest.h>

#include <cmath>

#include "evolution.hpp"
#include "lightcone.hpp"

using namespace hrlab;

namespace {
EvolutionEngine engine_for(int n, double eps, Boundary b) {
  Hamiltonian h = build_hamiltonian(Interaction::ising(1, eps), Lattice::chain(n, b));
  return b == Boundary::Periodic ? EvolutionEngine::make_sectors(h)
                                 : EvolutionEngine::make_dense(h);
}
}  // namespace

TEST_CASE("identity is invariant under evolution") {
  EvolutionEngine eng = engine_for(6, 0.1, Boundary::Periodic);
  LocalOperator one =
      LocalOperator::identity(eng.lattice(), Region::single(eng.lattice(), {0, 0}));
  LocalOperator ev = eng.evolve_operator(one, 1.7);
  LocalOperator ref = embed(one, Region::full(eng.lattice()));
  CHECK(add(ev, -1.0, ref).to_dense_matrix().max_abs() < 1e-10);
}

TEST_CASE("diagonal operators are frozen at eps = 0") {
  EvolutionEngine eng = engine_for(6, 0.0, Boundary::Periodic);
  LocalOperator s3 = LocalOperator::pauli(eng.lattice(), {0, 0}, 3);
  for (double t : {0.5, 2.0}) {
    LocalOperator ev = eng.evolve_operator(s3, t);
    LocalOperator ref = embed(s3, Region::full(eng.lattice()));
    CHECK(add(ev, -1.0, ref).to_dense_matrix().max_abs() < 1e-10);
  }
}

TEST_CASE("eps = 0 dynamics is strictly on-site") {
  EvolutionEngine eng = engine_for(6, 0.0, Boundary::Periodic);
  LocalOperator s1 = LocalOperator::pauli(eng.lattice(), {0, 0}, 1);
  LocalOperator probe = LocalOperator::pauli(eng.lattice(), {2, 0}, 1);
  for (double t : {0.5, 1.0, 5.0}) {
    LocalOperator ev = eng.evolve_operator(s1, t);
    CHECK(op_norm(commutator(ev, probe)) < 1e-10);
  }
}

TEST_CASE("evolution preserves norms and spectra") {
  EvolutionEngine eng = engine_for(6, 0.12, Boundary::Periodic);
  LocalOperator a = add(LocalOperator::pauli(eng.lattice(), {1, 0}, 1), cx(0.7),
                        LocalOperator::pauli(eng.lattice(), {2, 0}, 2));
  const double t = 1.3;
  LocalOperator ev = eng.evolve_operator(a, t);
  CHECK(op_norm(ev) == doctest::Approx(op_norm(a)).epsilon(1e-10));

  // Hermitian spectrum is preserved point by point
  LocalOperator hA = add(a, 1.0, a.adjoint());
  auto e0 = eigh(embed(hA, Region::full(eng.lattice())).to_dense_matrix());
  auto e1 = eigh(eng.evolve_operator(hA, t).to_dense_matrix());
  for (size_t i = 0; i < e0.evals.size(); ++i)
    CHECK(std::abs(e0.evals[i] - e1.evals[i]) < 1e-10);
}

TEST_CASE("group law and time zero") {
  EvolutionEngine eng = engine_for(5, 0.2, Boundary::Periodic);
  LocalOperator a = LocalOperator::pauli(eng.lattice(), {0, 0}, 1);
  LocalOperator a0 = eng.evolve_operator(a, 0.0);
  CHECK(add(a0, -1.0, embed(a, Region::full(eng.lattice()))).to_dense_matrix().max_abs() <
        1e-12);
  LocalOperator split = eng.evolve_operator(eng.evolve_operator(a, 0.7), 0.6);
  LocalOperator direct = eng.evolve_operator(a, 1.3);
  CHECK(op_norm(add(split, -1.0, direct)) < 1e-9);
}

TEST_CASE("engine reconstruction residual") {
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, 0.1), Lattice::chain(8, Boundary::Periodic));
  EvolutionEngine eng = EvolutionEngine::make_sectors(h);
  CHECK(eng.reconstruction_residual(h) < 1e-10);
  Hamiltonian ho =
      build_hamiltonian(Interaction::ising(1, 0.1), Lattice::chain(8, Boundary::Open));
  EvolutionEngine dense = EvolutionEngine::make_dense(ho);
  CHECK(dense.reconstruction_residual(ho) < 1e-10);
}

TEST_CASE("sector and dense engines agree on a periodic lattice") {
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, 0.15), Lattice::chain(6, Boundary::Periodic));
  EvolutionEngine sec = EvolutionEngine::make_sectors(h);
  EvolutionEngine den = EvolutionEngine::make_dense(h);
  LocalOperator a = LocalOperator::pauli(sec.lattice(), {2, 0}, 1);
  LocalOperator e1 = sec.evolve_operator(a, 0.9);
  LocalOperator e2 = den.evolve_operator(a, 0.9);
  CHECK(add(e1, -1.0, e2).to_dense_matrix().max_abs() < 1e-9);
}

TEST_CASE("matrix-free application matches the dense path") {
  EvolutionEngine eng = engine_for(8, 0.1, Boundary::Periodic);
  LocalOperator a = LocalOperator::pauli(eng.lattice(), {3, 0}, 1);
  const double t = 1.1;
  LocalOperator dense = eng.evolve_operator(a, t);
  std::vector<cx> v = random_unit_vector(eng.dim(), 99);
  std::vector<cx> y1(eng.dim()), y2(eng.dim());
  eng.apply_evolved(a, t, v.data(), y1.data());
  CMat dm = dense.to_dense_matrix();
  gemv('N', 1.0, dm, v.data(), 0.0, y2.data());
  double diff = 0;
  for (int64_t i = 0; i < eng.dim(); ++i) diff = std::max(diff, std::abs(y1[i] - y2[i]));
  CHECK(diff < 1e-10);
}

TEST_CASE("Krylov propagation matches exact evolution") {
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, 0.1), Lattice::chain(8, Boundary::Open));
  EvolutionEngine dense = EvolutionEngine::make_dense(h);
  std::vector<cx> v = random_unit_vector(h.dim(), 1234);
  std::vector<cx> kry = v, exact = v;
  krylov_evolve(h, kry, 1.7, +1.0);
  dense.evolve_vector(exact, 1.7, +1.0);
  // engines shift by E0, the Krylov path does not; compare up to a global phase
  cx ov = dot(exact, kry);
  const cx phase = ov / std::abs(ov);
  double diff = 0;
  for (size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(kry[i] - phase * exact[i]));
  CHECK(diff < 1e-9);
  CHECK(std::abs(nrm2(kry) - 1.0) < 1e-11);
}

TEST_CASE("boundary independence improves with system size") {
  // || tau^open_t(A) - tau^periodic_t(A) || strictly decreasing in N at t = 1
  const double t = 1.0;
  std::vector<double> gaps;
  for (int n : {6, 8, 10}) gaps.push_back(boundary_gap(Interaction::ising(1, 0.1), n, t, n / 2, 1));
  CHECK(gaps[1] < gaps[0]);
  CHECK(gaps[2] < gaps[1]);
}

TEST_CASE("ground-state clustering at eps = 0.1") {
  EvolutionEngine eng = engine_for(10, 0.1, Boundary::Periodic);
  LocalOperator a = LocalOperator::pauli(eng.lattice(), {0, 0}, 1);
  ClusteringFit fit = clustering_fit(eng, a, a, 5);
  CHECK(fit.mu > 0.0);
  // correlations themselves decay monotonically over the tested range
  for (size_t i = 1; i + 1 < fit.values.size(); ++i) CHECK(fit.values[i] <= fit.values[i - 1]);
}
