#include <doctest.h>

#include <cmath>

#include "lightcone.hpp"

using namespace hrlab;

namespace {
struct Setup {
  EvolutionEngine eng;
  LRCertificate cert;
};

Setup make_setup(int n, double eps) {
  Hamiltonian h = build_hamiltonian(Interaction::ising(1, eps), Lattice::chain(n, Boundary::Periodic));
  DecayFunction f;
  std::vector<double> grid;
  for (double l = 0.25; l <= 4.0; l *= std::sqrt(2.0)) grid.push_back(l);
  return {EvolutionEngine::make_sectors(h), lr_velocity(Interaction::ising(1, eps), grid, f)};
}
}  // namespace

TEST_CASE("lightcone profile: zero row at t=0, bounded front, dominated tail") {
  Setup s = make_setup(10, 0.1);
  LocalOperator a = LocalOperator::pauli(s.eng.lattice(), {0, 0}, 1);
  std::vector<double> times = {0.0, 0.5, 1.0, 1.5, 2.0};
  std::vector<int> disp = {1, 2, 3, 4, 5};
  LightConeProfile prof = lightcone_profile(s.eng, a, a, times, disp);

  for (const auto& smp : prof.samples) {
    CHECK(smp.comm_norm >= 0.0);
    if (smp.t == 0.0 && smp.dist > 0) CHECK(smp.comm_norm == 0.0);
    // pointwise domination by the LRB envelope with the explicit constant
    CHECK(smp.comm_norm <= lrb_envelope(s.cert, 1.0, 1.0, 1, 1, smp.dist, smp.t) + 1e-12);
  }
  CHECK(prof.v_emp <= s.cert.v_star);
  CHECK(prof.v_emp > 0.0);
  CHECK(prof.fit_rate < 0.0);  // decay away from the cone
  CHECK(prof.usable_fit_samples >= 3);
}

TEST_CASE("matrix-free commutator norms match the dense path") {
  Setup s = make_setup(8, 0.15);
  LocalOperator a = LocalOperator::pauli(s.eng.lattice(), {0, 0}, 1);
  std::vector<double> times = {0.8};
  std::vector<int> disp = {2, 3};
  // dense path (dim 256 <= 2^11 triggers evolve_operator + op_norm)
  LightConeProfile dense = lightcone_profile(s.eng, a, a, times, disp, 1e-3, 1.0);
  for (const auto& smp : dense.samples) {
    // recompute matrix-free through a forced large-dim path: compare against
    // the direct dense commutator norm
    LocalOperator at = s.eng.evolve_operator(a, smp.t);
    LocalOperator bx = translate(a, {smp.x, 0});
    CHECK(smp.comm_norm == doctest::Approx(op_norm(commutator(at, bx))).epsilon(1e-6));
  }
}

TEST_CASE("insufficient outside-cone samples raises a diagnostic") {
  Setup s = make_setup(6, 0.1);
  LocalOperator a = LocalOperator::pauli(s.eng.lattice(), {0, 0}, 1);
  // a single deep-inside-cone sample leaves nothing to fit
  CHECK_THROWS_WITH_AS(lightcone_profile(s.eng, a, a, {2.0}, {1}), doctest::Contains("usable"),
                       NumericalError);
}
