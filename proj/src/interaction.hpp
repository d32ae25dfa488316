#pragma once

#include <functional>
#include <string>
#include <vector>

#include "local_operator.hpp"

namespace hrlab {

// Power-law decay function F(r) = (1+r)^{-(d+eps_f)} and its exponential tilts
// F_lambda(r) = e^{-lambda r} F(r). The norm ||F|| is summed over a truncation
// window with an integral tail bound reported alongside.
//
// The displayed bound on C in the source material reads with a positive exponent,
// which diverges; we implement the convergent reading C = 2^{d+eps_f+1} ||F||.
struct DecayFunction {
  int d = 1;
  double eps_f = 1.0;
  int64_t truncation = 1000000;  // |x| <= truncation in the ||F|| sum (1D)

  double F(double r) const { return std::pow(1.0 + r, -double(d) - eps_f); }
  double F_lambda(double lambda, double r) const { return std::exp(-lambda * r) * F(r); }

  double norm() const;        // truncated sum over Z^d (metric balls)
  double norm_tail() const;   // integral bound on the truncated remainder
  double C_bound() const { return std::pow(2.0, d + eps_f + 1.0) * (norm() + norm_tail()); }
};

// One translation orbit generator: a Hermitian matrix over the sites
// origin + rel_sites (listed in sorted order).
struct InteractionGenerator {
  std::vector<Displacement> rel_sites;
  CMat mat;
  std::string label;
  double norm = -1.0;  // cached operator norm
};

// Translation-invariant finite-range interaction, given by its orbit generators.
struct Interaction {
  std::string name;
  int d = 1;
  double eps = 0.0;  // model coupling
  int range = 1;     // max diameter of any generator support
  std::vector<InteractionGenerator> generators;

  static Interaction ising(int d, double eps);
  static Interaction heisenberg(int d, double eps);

  double generator_norm(size_t i) const;
};

// ||Phi||_lambda = sup_x sum_{X containing x and 0} ||Phi(X)|| / F_lambda(|x|),
// evaluated exactly for finite-range interactions (infinite-lattice quantity;
// the metric is the one fixed for the artifact, l-infinity by default).
double interaction_norm(const Interaction& phi, double lambda, const DecayFunction& f,
                        Metric metric = Metric::LInf);

struct LRCertificate {
  double lambda_star = 0.0;
  double phi_norm_star = 0.0;    // ||Phi||_{lambda*}
  double c_lambda = 0.0;         // the bound C used for C_{lambda*}
  double v_star = 0.0;           // 2 ||Phi||_{lambda*} C / lambda*
  double f_norm = 0.0;           // ||F|| including tail bound
  double f_norm_tail = 0.0;
  std::vector<double> grid_lambda;
  std::vector<double> grid_phi_norm;
  std::vector<double> grid_v;
  std::string metric_tag;
};

// Grid search plus golden-section refinement for the best certificate
// v_lambda = 2 ||Phi||_lambda C_lambda / lambda with C_lambda bounded by C.
LRCertificate lr_velocity(const Interaction& phi, const std::vector<double>& lambda_grid,
                          const DecayFunction& f, Metric metric = Metric::LInf);

// Product of single-site 2x2 factors; matrix-free Hamiltonian term.
struct HTermFactor {
  int site;       // site index in the lattice
  cx m[2][2];     // single-site matrix, m[out_bit][in_bit]
};
struct HTerm {
  std::vector<HTermFactor> factors;
};

// Finite-volume Hamiltonian H = sum over translates of the generators.
class Hamiltonian {
 public:
  Hamiltonian(const Interaction& phi, const Lattice& lat);

  const Lattice& lattice() const { return lat_; }
  const Interaction& interaction() const { return phi_; }
  int64_t dim() const { return dim_; }
  int64_t term_count() const { return int64_t(terms_.size()); }

  void apply(const cx* x, cx* y) const;                    // y = H x, matrix-free
  void apply_basis_state(int64_t s, const std::function<void(int64_t, cx)>& emit) const;
  LocalOperator as_local_operator() const;                 // sparse, full-lattice support

 private:
  Lattice lat_;
  Interaction phi_;
  int64_t dim_;
  std::vector<HTerm> terms_;
};

// Builds H_Lambda for the interaction on the lattice (boundary from the lattice).
Hamiltonian build_hamiltonian(const Interaction& phi, const Lattice& lat);

}  // namespace hrlab
