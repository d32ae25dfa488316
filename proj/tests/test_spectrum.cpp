#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "joint_spectrum.hpp"
#include "support/jw_oracle.hpp"

using namespace hrlab;

namespace {

JointSpectrum ising_spectrum(int n, double eps) {
  return momentum_sectors(
      build_hamiltonian(Interaction::ising(1, eps), Lattice::chain(n, Boundary::Periodic)));
}

// Independent orbit enumeration: sector dimension of momentum k equals the number
// of translation orbits whose period divides gcd-compatibly into k.
std::vector<int> necklace_sector_dims(int n) {
  std::vector<int> dims(n, 0);
  std::vector<char> seen(size_t{1} << n, 0);
  for (int64_t s = 0; s < (int64_t{1} << n); ++s) {
    if (seen[s]) continue;
    // orbit period
    int64_t cur = s;
    int period = 0;
    do {
      seen[cur] = 1;
      cur = ((cur << 1) | (cur >> (n - 1))) & ((int64_t{1} << n) - 1);
      ++period;
    } while (cur != s);
    for (int k = 0; k < n; ++k)
      if ((int64_t(k) * period) % n == 0) ++dims[k];
  }
  return dims;
}

}  // namespace

TEST_CASE("sector dimensions from necklace counting, N=6") {
  JointSpectrum js = ising_spectrum(6, 0.0);
  auto expect = necklace_sector_dims(6);
  CHECK(js.sector_dims == expect);
  CHECK(expect[0] == 14);  // binary necklaces of length 6
  int64_t total = 0;
  for (int d : js.sector_dims) total += d;
  CHECK(total == 64);
}

TEST_CASE("sector completeness for several sizes") {
  for (int n : {4, 5, 8}) {
    JointSpectrum js = ising_spectrum(n, 0.07);
    auto expect = necklace_sector_dims(n);
    CHECK(js.sector_dims == expect);
  }
}

TEST_CASE("one-flip states give a flat band at eps = 0") {
  JointSpectrum js = ising_spectrum(6, 0.0);
  for (int k = 0; k < 6; ++k) {
    auto in = js.data->in_window(k, 0.5, 1.5);
    REQUIRE(in.size() == 1);
    CHECK(js.data->energy(in[0]) == doctest::Approx(1.0).epsilon(1e-12));
  }
  // ground state sits in the zero-momentum sector at energy zero
  CHECK(js.data->sectors[js.data->ground_sector].k_flat == 0);
  CHECK(js.gap == doctest::Approx(1.0));
}

TEST_CASE("lowest band matches the free-fermion oracle per momentum") {
  for (double eps : {0.1, 0.3}) {
    const int n = 8;
    JointSpectrum js = ising_spectrum(n, eps);
    oracle::JwIsing jw(n, eps);
    MassShell shell = extract_mass_shell(js, 0.75 * js.gap, 1.75 * js.gap);
    for (int k = 0; k < n; ++k)
      CHECK(std::abs(shell.sigma[k] - jw.band_energy(k)) < 1e-8);
  }
}

TEST_CASE("Rayleigh reproduction of stored eigenpairs") {
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, 0.1), Lattice::chain(8, Boundary::Periodic));
  JointSpectrum js = momentum_sectors(h);
  CHECK(verify_rayleigh(js, h, 0) < 1e-10);  // all states
}

TEST_CASE("spectrum is symmetric under p -> -p") {
  JointSpectrum js = ising_spectrum(7, 0.12);
  for (int k = 0; k < 7; ++k) {
    const int nk = js.grid.negate(k);
    const auto& a = js.data->sectors[js.data->sector_of_k(k)].evals;
    const auto& b = js.data->sectors[js.data->sector_of_k(nk)].evals;
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-9);
  }
}

TEST_CASE("unique gapped ground state at small eps") {
  for (double eps : {0.05, 0.1, 0.2}) {
    JointSpectrum js = ising_spectrum(8, eps);
    CHECK(js.gap > 0.1);
    int ground_mult = 0;
    for (const auto& p : js.points)
      if (std::abs(p.e) < 1e-10) ground_mult += p.mult;
    CHECK(ground_mult == 1);
  }
}

TEST_CASE("open boundary is rejected with a pointer to gap-only analysis") {
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, 0.1), Lattice::chain(6, Boundary::Open));
  CHECK_THROWS_WITH_AS(momentum_sectors(h), doctest::Contains("gap-only"), DomainError);
}

TEST_CASE("mass shell extraction and classification") {
  // flat band at eps = 0: not a valid shell, curvature identically zero
  JointSpectrum flat = ising_spectrum(6, 0.0);
  MassShell fs = extract_mass_shell(flat, 0.5, 1.5);
  for (double s : fs.sigma) CHECK(s == doctest::Approx(1.0));
  CHECK(!fs.regular);
  CHECK(!fs.condition_c);
  group_velocity(fs);
  for (double d : fs.dsigma_fd) CHECK(std::abs(d) < 1e-9);

  // a window inside the two-particle band is ambiguous
  CHECK_THROWS_AS(extract_mass_shell(flat, 1.5, 2.5), DomainError);

  // eps = 0.1: curved, regular, pseudo-relativistic
  JointSpectrum js = ising_spectrum(10, 0.1);
  MassShell shell = extract_mass_shell(js, 0.75 * js.gap, 1.75 * js.gap);
  CHECK(shell.regular);
  CHECK(shell.condition_c);
  CHECK(shell.pseudo_relativistic);
  for (double iso : shell.isolation) CHECK(iso > 0);
  CHECK(shell.interp_max_residual < 1e-12);
}

TEST_CASE("shell isolation margins follow the band picture") {
  // margin >= 1 - O(eps): fit the constant on one size
  const double eps = 0.1;
  JointSpectrum js = ising_spectrum(8, eps);
  MassShell shell = extract_mass_shell(js, 0.75 * js.gap, 1.75 * js.gap);
  double min_iso = 1e300;
  for (double i : shell.isolation) min_iso = std::min(min_iso, i);
  CHECK(min_iso >= 1.0 - 6.0 * eps);
}

TEST_CASE("group velocity") {
  // synthetic cosine shell: Sigma = c + delta cos p, so Sigma' = -delta sin p
  MassShell synth;
  const int n = 12;
  const double delta = 0.3;
  synth.n_grid = n;
  synth.p_flats.resize(n);
  synth.sigma.resize(n);
  synth.isolation.assign(n, 1.0);
  for (int k = 0; k < n; ++k) {
    synth.p_flats[k] = k;
    synth.sigma[k] = 2.0 + delta * std::cos(2.0 * kPi * k / n);
  }
  // rebuild the interpolant the same way extract_mass_shell does
  synth.interp_order = n / 2;
  synth.interp_coeffs.assign(n + 1, 0.0);
  for (int m = -n / 2; m <= n / 2; ++m) {
    cx acc = 0.0;
    for (int k = 0; k < n; ++k)
      acc += synth.sigma[k] * std::exp(cx(0, -m * 2.0 * kPi * k / n));
    acc /= double(n);
    if (std::abs(m) == n / 2) acc *= 0.5;
    synth.interp_coeffs[m + n / 2] = acc;
  }
  group_velocity(synth);
  for (int k = 0; k < n; ++k) {
    const double p = 2.0 * kPi * k / n;
    CHECK(synth.dsigma_interp[k] == doctest::Approx(-delta * std::sin(p)).epsilon(1e-10));
  }

  // Ising shell: maximum group velocity below the certificate velocity
  JointSpectrum js = ising_spectrum(10, 0.1);
  MassShell shell = extract_mass_shell(js, 0.75 * js.gap, 1.75 * js.gap);
  group_velocity(shell);
  DecayFunction f;
  std::vector<double> grid;
  for (double l = 0.25; l <= 4.0; l *= std::sqrt(2.0)) grid.push_back(l);
  LRCertificate cert = lr_velocity(Interaction::ising(1, 0.1), grid, f);
  CHECK(shell.max_group_velocity() <= cert.v_star);
  // and tracks the oracle's analytic derivative at the grid resolution
  CHECK(shell.max_group_velocity() ==
        doctest::Approx(oracle::JwIsing::max_group_velocity(0.1)).epsilon(2e-3));
}

TEST_CASE("additivity of the spectrum") {
  // eps = 0: integer spectrum makes additivity exact
  JointSpectrum flat = ising_spectrum(6, 0.0);
  AdditivityReport r0 = check_additivity(flat, 60, 1e-9);
  CHECK(r0.pass);

  // two one-flip states sum into the two-flip band exactly
  const SpectralData& sd = *flat.data;
  for (int p = 0; p < 6; ++p)
    for (int q = 0; q < 6; ++q) {
      const int ps = flat.grid.add(p, q);
      auto in = sd.in_window(ps, 1.5, 2.5);
      bool hit = false;
      for (int64_t g : in)
        if (std::abs(sd.energy(g) - 2.0) < 1e-9) hit = true;
      CHECK(hit);
    }

  // eps = 0.1: tolerance fitted from the measured band half-width
  JointSpectrum js = ising_spectrum(10, 0.1);
  AdditivityReport rep = check_additivity(js, 100, 0.1);
  CHECK(rep.tested == 100);
  CHECK(rep.pass);
}

TEST_CASE("gap flow") {
  GapFlow flat = gap_flow(Interaction::ising(1, 0.0), {4, 6, 8}, 0.5);
  for (double g : flat.gaps) CHECK(g == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(flat.pass);

  GapFlow gf = gap_flow(Interaction::ising(1, 0.1), {6, 8, 10}, 0.5);
  for (size_t i = 0; i < gf.sizes.size(); ++i) {
    oracle::JwIsing jw(gf.sizes[i], 0.1);
    CHECK(std::abs(gf.gaps[i] - jw.gap()) < 1e-6);
  }
  CHECK(gf.pass);

  CHECK_THROWS_AS(gap_flow(Interaction::ising(1, 0.1), {6, 8}, 0.5), DomainError);
}

TEST_CASE("band mode agrees with full diagonalization on the lowest levels") {
  Hamiltonian h =
      build_hamiltonian(Interaction::ising(1, 0.15), Lattice::chain(8, Boundary::Periodic));
  JointSpectrum full = momentum_sectors(h);
  JointSpectrum band = momentum_sectors_band(h, 2);
  for (size_t s = 0; s < band.data->sectors.size(); ++s) {
    const auto& be = band.data->sectors[s].evals;
    const auto& fe = full.data->sectors[s].evals;
    for (size_t i = 0; i < be.size() && i < fe.size(); ++i)
      CHECK(std::abs(be[i] - fe[i]) < 1e-9);
  }
}
