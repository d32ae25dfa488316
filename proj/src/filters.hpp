#pragma once

#include <optional>

#include "lattice.hpp"

namespace hrlab {

// C-infinity plateau window built from the standard bump e^{-1/u}: equal to 1 on
// the inner half-window [c - w/2, c + w/2], falling smoothly to 0 at c +- w,
// support exactly [c - w, c + w], values in [0, 1].
struct PlateauWindow {
  double center = 0.0;
  double half_width = 1.0;  // w; support is [center - w, center + w]

  double eval(double x) const;          // window value
  double eval_dist(double dist) const;  // as a function of |x - center|
};

// Separable filter f_hat(E, p) = w_E(E) * w_p(circdist(p, p0)). Either factor may
// be absent (all-pass), giving the time-only / space-only smearing marginals.
struct FilterFunction {
  std::optional<PlateauWindow> energy;    // window in E
  std::optional<PlateauWindow> momentum;  // window in circular distance to p0, axis 0
  std::optional<PlateauWindow> momentum1; // second axis (d=2), optional
  double p0[2] = {0.0, 0.0};

  double eval(double de, const std::array<double, 2>& dp) const;
  double eval(double de, double dp0) const { return eval(de, {dp0, 0.0}); }

  static FilterFunction energy_window(double e0, double we);
  static FilterFunction momentum_window(double p0, double wp);
  static FilterFunction product(double e0, double we, double p0, double wp);

  // conjugate-reflected filter implementing smear(a, f)^dagger = smear(a^dagger, f~)
  FilterFunction reflected() const;

  bool energy_support(double& lo, double& hi) const;  // false if all-pass
};

double circ_dist(double a, double b);  // distance on the momentum torus, in [0, pi]

}  // namespace hrlab
