#include "packets.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

WavePacket WavePacket::from_shell(const MassShell& shell, double p_center, double wp, double x0,
                                  int pad_to) {
  WavePacket g;
  const int n = shell.n_grid;
  g.m = pad_to > n ? pad_to : n;
  g.p_center = p_center;
  g.width = wp;
  g.x0 = x0;
  g.ghat.resize(g.m);
  g.sigma.resize(g.m);
  g.dsigma.resize(g.m);
  g.d2sigma.resize(g.m);
  PlateauWindow win{0.0, wp};
  g.vmin = 1e300;
  g.vmax = -1e300;
  for (int j = 0; j < g.m; ++j) {
    const double p = 2.0 * kPi * j / g.m;
    const double amp = win.eval_dist(circ_dist(p, p_center));
    g.ghat[j] = amp * std::exp(cx(0, -p * x0));
    if (g.m == n) {
      g.sigma[j] = shell.sigma[j];
      g.dsigma[j] = shell.dsigma_at(p);
      g.d2sigma[j] = shell.d2sigma_at(p);
    } else {
      g.sigma[j] = shell.sigma_at(p);
      g.dsigma[j] = shell.dsigma_at(p);
      g.d2sigma[j] = shell.d2sigma_at(p);
    }
    if (amp > 0.0) {
      g.vmin = std::min(g.vmin, g.dsigma[j]);
      g.vmax = std::max(g.vmax, g.dsigma[j]);
    }
  }
  if (g.vmin > g.vmax) throw DomainError("wave packet has empty momentum support");
  return g;
}

WavePacket WavePacket::grid_delta(const MassShell& shell, int k_index) {
  WavePacket g;
  const int n = shell.n_grid;
  g.m = n;
  g.p_center = 2.0 * kPi * k_index / n;
  g.width = 0.0;
  g.ghat.assign(n, 0.0);
  g.ghat[k_index] = 1.0;
  g.sigma = shell.sigma;
  g.dsigma.resize(n);
  g.d2sigma.resize(n);
  for (int j = 0; j < n; ++j) {
    const double p = 2.0 * kPi * j / n;
    g.dsigma[j] = shell.dsigma_at(p);
    g.d2sigma[j] = shell.d2sigma_at(p);
  }
  g.vmin = g.vmax = g.dsigma[k_index];
  return g;
}

std::vector<cx> WavePacket::position_profile(double t) const {
  std::vector<cx> out(m, 0.0);
  const double inv = 1.0 / std::sqrt(double(m));
  for (int j = 0; j < m; ++j) {
    if (ghat[j] == cx(0.0)) continue;
    const cx c = ghat[j] * std::exp(cx(0, -sigma[j] * t)) * inv;
    const double p = 2.0 * kPi * j / m;
    for (int x = 0; x < m; ++x) out[x] += c * std::exp(cx(0, p * x));
  }
  return out;
}

double WavePacket::parseval_gap(double t) const {
  auto g = position_profile(t);
  double sx = 0.0, sp = 0.0;
  for (const cx& z : g) sx += std::norm(z);
  for (const cx& z : ghat) sp += std::norm(z);
  return std::abs(sx - sp);
}

double WavePacket::sup_abs(double t) const {
  auto g = position_profile(t);
  double s = 0.0;
  for (const cx& z : g) s = std::max(s, std::abs(z));
  return s;
}

double WavePacket::l1_norm(double t) const {
  auto g = position_profile(t);
  double s = 0.0;
  for (const cx& z : g) s += std::abs(z);
  return s;
}

double WavePacket::center_of_mass(double t) const {
  auto g = position_profile(t);
  cx acc = 0.0;
  for (int x = 0; x < m; ++x) acc += std::norm(g[x]) * std::exp(cx(0, 2.0 * kPi * x / m));
  double ang = std::arg(acc);
  if (ang < 0) ang += 2.0 * kPi;
  return ang * m / (2.0 * kPi);
}

double WavePacket::momentum_l2() const {
  double s = 0.0;
  for (const cx& z : ghat) s += std::norm(z);
  return std::sqrt(s);
}

bool WavePacket::support_straddles_inflection(double thr) const {
  // a support crossing Sigma'' = 0 mixes curved and flat points; a uniformly
  // flat dispersion is not a straddle (no stationary-phase spreading at all)
  bool flat = false, curved = false;
  for (int j = 0; j < m; ++j) {
    if (std::abs(ghat[j]) == 0.0) continue;
    (std::abs(d2sigma[j]) < thr ? flat : curved) = true;
  }
  return flat && curved;
}

double WavePacket::wrap_time() const {
  double v = 0.0;
  for (int j = 0; j < m; ++j)
    if (std::abs(ghat[j]) > 0) v = std::max(v, std::abs(dsigma[j]));
  return v > 0 ? double(m) / (2.0 * v) : 1e300;
}

namespace {
// least squares y = a + b x with standard error on b
void linfit(const std::vector<double>& x, const std::vector<double>& y, double& b, double& berr) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  b = (n * sxy - sx * sy) / den;
  const double a = (sy - b * sx) / n;
  double ss = 0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - a - b * x[i];
    ss += r * r;
  }
  berr = n > 2 ? std::sqrt(ss / double(n - 2) * double(n) / den) : 0.0;
}
}  // namespace

ScalingReport packet_norm_scaling(const WavePacket& g, const std::vector<double>& times) {
  ScalingReport rep;
  if (g.support_straddles_inflection()) {
    rep.warning = "packet support straddles an inflection point; fit excluded";
    rep.fit_valid = false;
    return rep;
  }
  const double twrap = g.wrap_time();
  std::vector<double> lt, lsup, ll1;
  for (double t : times) {
    if (t > twrap) {
      rep.truncated = true;
      rep.warning = "window truncated at the wrap estimate";
      continue;
    }
    // empirical wrap check: support reached the antipode of the launch point
    auto prof = g.position_profile(t);
    const int anti = (int(std::lround(g.x0)) + g.m / 2) % g.m;
    double sup = 0.0;
    for (const cx& z : prof) sup = std::max(sup, std::abs(z));
    if (std::abs(prof[anti]) > 1e-4 * sup) {
      rep.truncated = true;
      rep.warning = "window truncated: support reached the antipode";
      continue;
    }
    rep.times.push_back(t);
    double l1 = 0.0;
    for (const cx& z : prof) l1 += std::abs(z);
    rep.sup_vals.push_back(sup);
    rep.l1_vals.push_back(l1);
    lt.push_back(std::log(t));
    lsup.push_back(std::log(sup));
    ll1.push_back(std::log(l1));
  }
  if (lt.size() < 4) {
    rep.fit_valid = false;
    if (rep.warning.empty()) rep.warning = "not enough usable samples";
    return rep;
  }
  linfit(lt, lsup, rep.slope_sup, rep.slope_sup_err);
  linfit(lt, ll1, rep.slope_l1, rep.slope_l1_err);
  rep.fit_valid = true;
  return rep;
}

}  // namespace hrlab
