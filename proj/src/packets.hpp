#pragma once

#include <string>
#include <vector>

#include "filters.hpp"
#include "joint_spectrum.hpp"

namespace hrlab {

// Single-particle wave packet: amplitudes ghat on a momentum grid of m points
// together with dispersion samples from a mass shell. The position profile uses
// the unitary grid transform g_t(x) = m^{-1/2} sum_j ghat_j e^{-i Sigma_j t + i p_j x},
// which keeps Parseval exact; the continuum normalization of the source formulas
// is absorbed into ghat (documented in the README).
struct WavePacket {
  int m = 0;                    // grid size (physical N, or padded)
  std::vector<cx> ghat;         // on p_j = 2 pi j / m
  std::vector<double> sigma;    // dispersion samples on the same grid
  std::vector<double> dsigma;   // group velocity samples
  std::vector<double> d2sigma;  // curvature samples
  double p_center = 0.0, width = 0.0, x0 = 0.0;

  // Velocity support bounds over supp ghat (d = 1 interval).
  double vmin = 0.0, vmax = 0.0;

  // On the physical grid: sigma taken bit-exactly from the shell samples so the
  // packet phases match the eigenvalues. `pad_to > shell grid` evaluates the
  // shell interpolant on the finer grid instead.
  static WavePacket from_shell(const MassShell& shell, double p_center, double wp, double x0,
                               int pad_to = 0);
  // grid delta at a single momentum index
  static WavePacket grid_delta(const MassShell& shell, int k_index);

  std::vector<cx> position_profile(double t) const;  // g_t
  double parseval_gap(double t) const;  // |sum_x |g_t|^2 - sum_p |ghat|^2|
  double sup_abs(double t) const;
  double l1_norm(double t) const;
  double center_of_mass(double t) const;  // circular mean of |g_t|^2, in [0, m)
  double momentum_l2() const;
  bool support_straddles_inflection(double d2_threshold = 1e-6) const;
  double wrap_time() const;  // m / (2 max |Sigma'|) estimate
  cx ghat_at_flat(int k) const { return ghat[((k % m) + m) % m]; }
  double sigma_at_flat(int k) const { return sigma[((k % m) + m) % m]; }
};

struct ScalingReport {
  std::vector<double> times, sup_vals, l1_vals;
  double slope_sup = 0.0, slope_sup_err = 0.0;
  double slope_l1 = 0.0, slope_l1_err = 0.0;
  bool fit_valid = false;
  bool truncated = false;
  std::string warning;
};

// Log-log fits of sup_x |g_t| and ||g_t||_1 against t over the pre-wrap window,
// with standard errors. d = 1 targets: -1/2 and +1/2 on a regular shell.
ScalingReport packet_norm_scaling(const WavePacket& g, const std::vector<double>& times);

}  // namespace hrlab
