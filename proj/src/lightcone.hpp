#pragma once

#include "evolution.hpp"
#include "interaction.hpp"

namespace hrlab {

struct LightConeSample {
  double t;
  int x;        // displacement applied to b
  int dist;     // lattice distance between the supports
  double comm_norm;
};

struct LightConeProfile {
  std::vector<LightConeSample> samples;
  double v_emp = 0.0;      // smallest v with all >= threshold samples inside |x| <= v t + r0
  double threshold = 1e-3;
  double r0 = 1.0;
  double fit_rate = 0.0;   // slope of log norm vs (dist - v_emp t) outside the cone
  double fit_logc = 0.0;
  int usable_fit_samples = 0;
};

// Samples ||[tau_t(a), translate(b, x)]|| on the grid. Commutator norms via
// Hermitian Lanczos on i[.,.] when both operators are Hermitian (the default
// here), dense fallback below 2^12.
LightConeProfile lightcone_profile(const EvolutionEngine& eng, const LocalOperator& a,
                                   const LocalOperator& b, const std::vector<double>& times,
                                   const std::vector<int>& displacements,
                                   double threshold = 1e-3, double r0 = 1.0);

// LRB envelope with the explicit finite-volume constant
//   (2 ||A|| ||B|| / C_lambda) min(|S_A|, |S_B|) ||F|| e^{-lambda (dist - v t)}.
// Using the upper bound C for C_lambda only shrinks the envelope, so domination
// against it implies domination against the theorem's envelope.
double lrb_envelope(const LRCertificate& cert, double norm_a, double norm_b, int sa, int sb,
                    int dist, double t);

// ||tau^open_t(A) - tau^periodic_t(A)|| for A near the chain center; the open
// evolution runs matrix-free (Krylov), the periodic one through the engine.
double boundary_gap(const Interaction& phi, int n_sites, double t, int site_a, int axis_a);

// Exponential clustering in the finite-volume ground state: fitted decay rate of
// |<A tau_x(B)> - <A><B>| against distance (mu > 0 expected for gapped models).
struct ClusteringFit {
  std::vector<int> dists;
  std::vector<double> values;
  double mu = 0.0;  // fitted rate (positive = decaying)
  double logc = 0.0;
};
ClusteringFit clustering_fit(const EvolutionEngine& eng, const LocalOperator& a,
                             const LocalOperator& b, int max_dist);

}  // namespace hrlab
