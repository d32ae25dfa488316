#include "support/jw_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrlab::oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;

double mode_energy(double p, double eps) {
  return std::sqrt(1.0 + 4.0 * eps * eps - 4.0 * eps * std::cos(p));
}

// vacuum energy and mode list for one sector; `half_shift` selects the
// antiperiodic (even parity) grid
void build_sector(int n, double eps, bool half_shift, std::vector<double>& modes, double& vac) {
  modes.clear();
  vac = 0.0;
  std::vector<char> seen(n, 0);
  for (int m = 0; m < n; ++m) {
    const double p = 2.0 * kPi * (m + (half_shift ? 0.5 : 0.0)) / n;
    modes.push_back(mode_energy(p, eps));
  }
  // pair (m, -m): Bogoliubov vacuum picks up a(p) - E(p) per pair; self-paired
  // modes (p = 0 or pi) stay diagonal and contribute nothing for eps < 1/2
  for (int m = 0; m < n; ++m) {
    if (seen[m]) continue;
    // partner index: p -> -p (mod 2 pi) on the same grid
    int partner;
    if (half_shift) partner = (n - 1 - m) % n;  // (m+1/2) + (partner+1/2) = n
    else partner = (n - m) % n;
    if (partner == m) {
      seen[m] = 1;
      continue;
    }
    seen[m] = seen[partner] = 1;
    const double p = 2.0 * kPi * (m + (half_shift ? 0.5 : 0.0)) / n;
    const double a = 1.0 - 2.0 * eps * std::cos(p);
    vac += a - mode_energy(p, eps);
  }
}
}  // namespace

JwIsing::JwIsing(int n_sites, double eps) : n_(n_sites), eps_(eps) {
  if (n_ < 3) throw std::invalid_argument("JW oracle needs N >= 3 (wrap bond degenerates)");
  if (eps >= 0.5) throw std::invalid_argument("JW oracle assumes eps < 1/2 (no band inversion)");
  build_sector(n_, eps_, true, ns_modes_, ns_vac_);
  build_sector(n_, eps_, false, r_modes_, r_vac_);
}

std::vector<double> JwIsing::full_spectrum() const {
  std::vector<double> out;
  out.reserve(std::size_t{1} << n_);
  for (int parity = 0; parity < 2; ++parity) {
    const auto& modes = parity == 0 ? ns_modes_ : r_modes_;
    const double vac = parity == 0 ? ns_vac_ : r_vac_;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n_); ++mask) {
      if ((__builtin_popcountll(mask) & 1) != parity) continue;
      double e = vac;
      for (int m = 0; m < n_; ++m)
        if ((mask >> m) & 1) e += modes[m];
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double JwIsing::ground_energy() const { return ns_vac_; }

double JwIsing::gap() const {
  // lowest excitation: one R quasiparticle at p = 0
  return (r_vac_ + r_modes_[0]) - ns_vac_;
}

double JwIsing::band_energy(int k) const {
  const int kk = ((k % n_) + n_) % n_;
  return (r_vac_ + r_modes_[kk]) - ns_vac_;
}

double JwIsing::dispersion(double p, double eps) { return mode_energy(p, eps); }

double JwIsing::dispersion_derivative(double p, double eps) {
  return 2.0 * eps * std::sin(p) / mode_energy(p, eps);
}

double JwIsing::max_group_velocity(double eps) {
  // stationary point of the derivative sits at cos p = 2 eps, giving exactly 2 eps
  return 2.0 * eps;
}

}  // namespace hrlab::oracle
