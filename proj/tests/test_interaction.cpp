#include <doctest.h>

#include <cmath>

#include "interaction.hpp"
#include "support/jw_oracle.hpp"

using namespace hrlab;

TEST_CASE("decay function norm against the zeta value") {
  DecayFunction f;  // d=1, eps_f=1: ||F|| = 1 + 2 (zeta(2) - 1) = pi^2/3 - 1
  const double exact = kPi * kPi / 3.0 - 1.0;
  CHECK(f.norm() + f.norm_tail() >= exact);
  CHECK(f.norm() <= exact);
  CHECK(f.norm() + f.norm_tail() == doctest::Approx(exact).epsilon(1e-9));
  CHECK(f.C_bound() == doctest::Approx(std::pow(2.0, 3.0) * (f.norm() + f.norm_tail())));
}

TEST_CASE("interaction norm, hand-enumerated values") {
  DecayFunction f;  // F(r) = (1+r)^{-2}
  // eps = 0: a single on-site orbit of norm 1; the only pair is x = 0
  Interaction phi0 = Interaction::ising(1, 0.0);
  CHECK(interaction_norm(phi0, 0.7, f) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(interaction_norm(phi0, 2.0, f) == doctest::Approx(1.0).epsilon(1e-12));

  // eps = 0.1, lambda = 1: sup over x in {0, +-1} of
  //   x=0: (1 + 2 eps) / F_lambda(0) = 1.2
  //   |x|=1: eps / (e^{-1} / 4) = 0.4 e = 1.0873...
  Interaction phi = Interaction::ising(1, 0.1);
  CHECK(interaction_norm(phi, 1.0, f) == doctest::Approx(1.2).epsilon(1e-12));
  // lambda = 2: the bond pair dominates: 0.1 * 4 * e^2 = 2.9556...
  CHECK(interaction_norm(phi, 2.0, f) ==
        doctest::Approx(0.4 * std::exp(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(interaction_norm(phi, 0.0, f), DomainError);

  // homogeneity: doubling every generator doubles the norm
  Interaction twice = phi;
  for (auto& g : twice.generators)
    for (auto& z : g.mat.a) z *= 2.0;
  CHECK(interaction_norm(twice, 1.0, f) ==
        doctest::Approx(2.0 * interaction_norm(phi, 1.0, f)).epsilon(1e-12));
}

TEST_CASE("interaction norm is monotone in lambda") {
  DecayFunction f;
  Interaction phi = Interaction::ising(1, 0.1);
  double prev = 0.0;
  for (double lam = 0.25; lam < 5.0; lam *= 1.3) {
    double cur = interaction_norm(phi, lam, f);
    CHECK(cur >= prev - 1e-12);
    prev = cur;
  }
}

TEST_CASE("LR certificate") {
  DecayFunction f;
  std::vector<double> grid;
  for (double l = 0.25; l <= 4.0; l *= std::sqrt(2.0)) grid.push_back(l);
  Interaction phi = Interaction::ising(1, 0.1);
  LRCertificate cert = lr_velocity(phi, grid, f);
  CHECK(cert.v_star > 0);
  for (double v : cert.grid_v) CHECK(cert.v_star <= v + 1e-9);
  CHECK(cert.metric_tag == "linf");

  // doubling the two-body coupling strictly increases the best certificate
  LRCertificate cert2 = lr_velocity(Interaction::ising(1, 0.2), grid, f);
  CHECK(cert2.v_star > cert.v_star);
}

TEST_CASE("Ising spectrum at eps = 0") {
  Interaction phi = Interaction::ising(1, 0.0);
  Lattice lat = Lattice::chain(4, Boundary::Open);
  Hamiltonian h = build_hamiltonian(phi, lat);
  auto eig = eigh(h.as_local_operator().to_dense_matrix());
  // spectrum {0..4} with binomial multiplicities {1,4,6,4,1}
  std::vector<int> mult(5, 0);
  for (double e : eig.evals) {
    const int n = int(std::lround(e));
    CHECK(std::abs(e - n) < 1e-12);
    REQUIRE(n >= 0);
    REQUIRE(n <= 4);
    ++mult[n];
  }
  CHECK(mult == std::vector<int>{1, 4, 6, 4, 1});
  CHECK(eig.evals.front() == doctest::Approx(0.0));
}

TEST_CASE("Ising ground energy is zero at eps = 0 for several sizes") {
  for (int n : {3, 5, 8}) {
    Hamiltonian h =
        build_hamiltonian(Interaction::ising(1, 0.0), Lattice::chain(n, Boundary::Open));
    auto eig = eigh(h.as_local_operator().to_dense_matrix());
    CHECK(std::abs(eig.evals.front()) < 1e-12);
  }
}

TEST_CASE("periodic Ising matches the free-fermion oracle") {
  for (double eps : {0.1, 0.3}) {
    for (int n : {6, 8}) {
      Hamiltonian h =
          build_hamiltonian(Interaction::ising(1, eps), Lattice::chain(n, Boundary::Periodic));
      auto eig = eigh(h.as_local_operator().to_dense_matrix());
      oracle::JwIsing jw(n, eps);
      auto ref = jw.full_spectrum();
      REQUIRE(ref.size() == eig.evals.size());
      double worst = 0.0;
      for (size_t i = 0; i < ref.size(); ++i)
        worst = std::max(worst, std::abs(ref[i] - eig.evals[i]));
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("translation covariance of the periodic Hamiltonian") {
  Lattice lat = Lattice::chain(8, Boundary::Periodic);
  Hamiltonian h = build_hamiltonian(Interaction::ising(1, 0.13), lat);
  // conjugating by the translation permutation must reproduce H exactly
  LocalOperator ho = h.as_local_operator();
  LocalOperator moved = translate(ho, {1, 0});
  CHECK(add(ho, -1.0, moved).to_dense_matrix().max_abs() < 1e-12);
}

TEST_CASE("Heisenberg construction") {
  Lattice lat = Lattice::chain(6, Boundary::Periodic);
  Hamiltonian h = build_hamiltonian(Interaction::heisenberg(1, 0.1), lat);
  LocalOperator ho = h.as_local_operator();
  CHECK(ho.check_hermitian(1e-12));
  CHECK(add(ho, -1.0, translate(ho, {1, 0})).to_dense_matrix().max_abs() < 1e-12);
}

TEST_CASE("band structure: levels near integers for small eps") {
  const double eps = 0.05;
  const int n = 10;
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, eps), Lattice::chain(n, Boundary::Periodic));
  auto eig = eigh(h.as_local_operator().to_dense_matrix());
  const double e0 = eig.evals.front();
  double c_fit = 0.0;
  for (double e : eig.evals) {
    const double shifted = e - e0;
    const int band = int(std::lround(shifted));
    if (band == 0) continue;
    c_fit = std::max(c_fit, std::abs(shifted - band) / (band * eps));
  }
  CHECK(c_fit <= 5.0);
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(
      build_hamiltonian(Interaction::ising(2, 0.1), Lattice::chain(6, Boundary::Periodic)),
      DomainError);
}
