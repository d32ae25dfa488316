#include "filters.hpp"

#include <cmath>

namespace hrlab {

namespace {
double theta(double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; }
// smooth 0 -> 1 rise on [0, 1]
double rise(double u) {
  if (u <= 0) return 0.0;
  if (u >= 1) return 1.0;
  const double a = theta(u), b = theta(1.0 - u);
  return a / (a + b);
}
}  // namespace

double PlateauWindow::eval_dist(double dist) const {
  const double w = half_width;
  if (dist >= w) return 0.0;
  if (dist <= 0.5 * w) return 1.0;
  // falls from 1 at w/2 to 0 at w
  return rise((w - dist) / (0.5 * w));
}

double PlateauWindow::eval(double x) const { return eval_dist(std::abs(x - center)); }

double circ_dist(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return d > kPi ? 2.0 * kPi - d : d;
}

double FilterFunction::eval(double de, const std::array<double, 2>& dp) const {
  double v = 1.0;
  if (energy) v *= energy->eval(de);
  if (v == 0.0) return 0.0;
  if (momentum) v *= momentum->eval_dist(circ_dist(dp[0], p0[0]));
  if (v == 0.0) return 0.0;
  if (momentum1) v *= momentum1->eval_dist(circ_dist(dp[1], p0[1]));
  return v;
}

FilterFunction FilterFunction::energy_window(double e0, double we) {
  FilterFunction f;
  f.energy = PlateauWindow{e0, we};
  return f;
}

FilterFunction FilterFunction::momentum_window(double p0, double wp) {
  FilterFunction f;
  f.momentum = PlateauWindow{0.0, wp};
  f.p0[0] = p0;
  return f;
}

FilterFunction FilterFunction::product(double e0, double we, double p0, double wp) {
  FilterFunction f;
  f.energy = PlateauWindow{e0, we};
  f.momentum = PlateauWindow{0.0, wp};
  f.p0[0] = p0;
  return f;
}

FilterFunction FilterFunction::reflected() const {
  // f~(E, p) := conj(f_hat(-E, -p)); our windows are real, so only centers flip
  FilterFunction f = *this;
  if (f.energy) f.energy->center = -f.energy->center;
  f.p0[0] = wrap_to_pi(-f.p0[0]);
  f.p0[1] = wrap_to_pi(-f.p0[1]);
  return f;
}

bool FilterFunction::energy_support(double& lo, double& hi) const {
  if (!energy) return false;
  lo = energy->center - energy->half_width;
  hi = energy->center + energy->half_width;
  return true;
}

}  // namespace hrlab
