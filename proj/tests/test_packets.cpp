#include <doctest.h>

#include <cmath>

#include "packets.hpp"
#include "support/jw_oracle.hpp"

using namespace hrlab;

namespace {
MassShell ising_shell(int n, double eps, JointSpectrum* js_out = nullptr) {
  JointSpectrum js = momentum_sectors(
      build_hamiltonian(Interaction::ising(1, eps), Lattice::chain(n, Boundary::Periodic)));
  MassShell shell = extract_mass_shell(js, eps == 0.0 ? 0.5 : 0.75 * js.gap,
                                       eps == 0.0 ? 1.5 : 1.75 * js.gap);
  group_velocity(shell);
  if (js_out) *js_out = js;
  return shell;
}
}  // namespace

TEST_CASE("Parseval holds at every time") {
  MassShell shell = ising_shell(10, 0.1);
  WavePacket g = WavePacket::from_shell(shell, 2.0 * kPi * 3 / 10, 1.0, 0.0);
  for (double t : {0.0, 0.5, 3.0, 11.0}) CHECK(g.parseval_gap(t) < 1e-12);
}

TEST_CASE("time zero profile is the plain inverse transform") {
  MassShell shell = ising_shell(8, 0.1);
  WavePacket g = WavePacket::from_shell(shell, kPi / 2, 0.9, 2.0);
  auto prof = g.position_profile(0.0);
  for (int x = 0; x < g.m; ++x) {
    cx direct = 0.0;
    for (int j = 0; j < g.m; ++j)
      direct += g.ghat[j] * std::exp(cx(0, 2.0 * kPi * j * x / g.m)) / std::sqrt(double(g.m));
    CHECK(std::abs(prof[x] - direct) < 1e-12);
  }
}

TEST_CASE("flat dispersion evolves by a pure phase") {
  MassShell shell = ising_shell(6, 0.0);
  WavePacket g = WavePacket::from_shell(shell, 0.0, 1.2, 0.0);
  auto g0 = g.position_profile(0.0);
  auto gt = g.position_profile(2.7);
  // Sigma = 1 identically: g_t = e^{-i t} g_0
  const cx phase = std::exp(cx(0, -2.7));
  for (int x = 0; x < g.m; ++x) CHECK(std::abs(gt[x] - phase * g0[x]) < 1e-12);

  ScalingReport rep = packet_norm_scaling(g, {2, 4, 8, 16, 32});
  REQUIRE(rep.fit_valid);
  CHECK(std::abs(rep.slope_sup) < 1e-9);
  CHECK(std::abs(rep.slope_l1) < 1e-9);
}

TEST_CASE("packet center moves at the group velocity") {
  MassShell shell = ising_shell(10, 0.1);
  const double p0 = 2.0 * kPi * 3 / 10;  // near the fastest point of the band
  WavePacket g = WavePacket::from_shell(shell, p0, 0.7, 0.0, 128);
  const double v_expect = shell.dsigma_at(p0);
  const double x1 = g.center_of_mass(5.0), x2 = g.center_of_mass(20.0);
  double moved = x2 - x1;
  if (moved > 64) moved -= 128;
  if (moved < -64) moved += 128;
  const double v_emp = moved / 15.0;
  CHECK(std::abs(v_emp - v_expect) < 0.05 * std::abs(v_expect) + 1e-4);
}

TEST_CASE("stationary-phase norm scaling on the padded grid") {
  MassShell shell = ising_shell(12, 0.1);
  // support near the curvature maximum (around the band bottom), away from the
  // inflection of the dispersion
  WavePacket g = WavePacket::from_shell(shell, 0.0, 0.8, 0.0, 256);
  CHECK(!g.support_straddles_inflection());
  std::vector<double> times;
  for (double t = 20.0; t <= 260.0; t *= 1.25) times.push_back(t);
  ScalingReport rep = packet_norm_scaling(g, times);
  REQUIRE(rep.fit_valid);
  CHECK(rep.slope_sup == doctest::Approx(-0.5).epsilon(0.2));
  CHECK(rep.slope_l1 == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("a support straddling the inflection is excluded") {
  MassShell shell = ising_shell(12, 0.1);
  // wide window spanning flat and curved regions of Sigma''
  WavePacket g = WavePacket::from_shell(shell, kPi / 2, 2.5, 0.0, 128);
  if (g.support_straddles_inflection()) {
    ScalingReport rep = packet_norm_scaling(g, {5, 10, 20});
    CHECK(!rep.fit_valid);
    CHECK(!rep.warning.empty());
  }
}

TEST_CASE("wrap detection truncates the window") {
  MassShell shell = ising_shell(10, 0.1);
  WavePacket g = WavePacket::from_shell(shell, 2.0 * kPi * 3 / 10, 0.9, 0.0);  // physical grid
  std::vector<double> times = {1.0, 5.0, 1e5};
  ScalingReport rep = packet_norm_scaling(g, times);
  CHECK(rep.truncated);
}

TEST_CASE("velocity support from the shell derivative") {
  MassShell shell = ising_shell(10, 0.1);
  WavePacket g = WavePacket::from_shell(shell, 2.0 * kPi * 2 / 10, 0.8, 0.0);
  CHECK(g.vmin <= g.vmax);
  CHECK(g.vmax <= oracle::JwIsing::max_group_velocity(0.1) + 1e-3);
}
