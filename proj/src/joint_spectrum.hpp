#pragma once

#include <memory>
#include <string>
#include <vector>

#include "evolution.hpp"

namespace hrlab {

struct JointSpectrumPoint {
  double e;     // E - E0 >= -1e-10
  int p_flat;   // momentum grid index
  int mult;     // degeneracy within merge tolerance
};

// Joint energy-momentum spectrum Sp U from momentum-sector block diagonalization.
struct JointSpectrum {
  double e0_raw = 0.0;
  double gap = 0.0;
  std::vector<JointSpectrumPoint> points;
  std::vector<int> sector_dims;
  std::shared_ptr<const SpectralData> data;  // backing eigen data
  MomentumGrid grid{Lattice::chain(2, Boundary::Periodic)};
  int dim_d = 1;

  // retained spectral ceiling (smallest per-sector max energy; matters in band mode)
  double retained_ceiling() const;
};

// Requires a periodic lattice; verifies [H, U_T] ~ 0 first (done by the engine).
// Open boundaries get a domain error directing to gap-only analysis.
JointSpectrum momentum_sectors(const Hamiltonian& h);
JointSpectrum momentum_sectors(const EvolutionEngine& engine);
// Band mode: lowest `per_sector` levels per sector via Lanczos (large N).
JointSpectrum momentum_sectors_band(const Hamiltonian& h, int per_sector);

// Rayleigh-quotient reproduction check |<v|H|v> - E| for eigenpairs; returns the
// worst deviation over `samples` states per sector (all states if samples <= 0).
double verify_rayleigh(const JointSpectrum& js, const Hamiltonian& h, int samples = 16);

struct MassShell {
  std::vector<int> p_flats;           // all momentum indices, grid order
  std::vector<double> sigma;          // dispersion samples
  std::vector<double> isolation;      // distance to nearest other level at same p
  std::vector<double> dsigma_fd;      // centered finite differences (axis 0 in d=2)
  std::vector<double> dsigma_interp;  // trig-interpolant derivative (d=1)
  double fd_interp_discrepancy = 0.0;

  bool regular = false;
  bool pseudo_relativistic = false;
  bool condition_c = false;  // Def: Hessian-vanishing set has measure zero (grid surrogate)
  std::string classification_note;

  int interp_order = 0;
  double interp_max_residual = 0.0;
  std::vector<cx> interp_coeffs;  // trig coefficients, frequency m = -order..order (d=1)

  int n_grid = 0;
  double sigma_at(double p) const;    // trig interpolant (d=1)
  double dsigma_at(double p) const;
  double d2sigma_at(double p) const;
  double max_group_velocity() const;
};

// Isolates one spectral point per momentum inside (e_lo, e_hi). Two points at a
// momentum raise an ambiguity error listing the offenders; zero points raise a
// coverage error.
MassShell extract_mass_shell(const JointSpectrum& js, double e_lo, double e_hi);

// Fills dsigma_fd / dsigma_interp and the discrepancy; returns the shell.
MassShell& group_velocity(MassShell& shell);

struct AdditivityReport {
  int tested = 0;
  int passed = 0;
  double tol_e = 0.0;
  double worst = 0.0;
  int worst_i = -1, worst_j = -1;
  bool pass = false;
};

// Samples pairs from the spectrum and verifies q1+q2 lies within tol_e of a
// retained spectral point at the summed momentum. Only pairs whose sum stays
// below the retained ceiling are tested.
AdditivityReport check_additivity(const JointSpectrum& js, int samples, double tol_e,
                                  uint64_t seed = 12345);

struct GapFlow {
  std::vector<int> sizes;
  std::vector<double> gaps;
  double extrapolated = 0.0;
  double floor = 0.0;
  bool pass = false;
  bool monotone_trend = false;
};

GapFlow gap_flow(const Interaction& phi, const std::vector<int>& sizes, double floor);

}  // namespace hrlab
