#pragma once

#include <array>
#include <optional>
#include <vector>

#include "core/types.hpp"

namespace hrlab {

enum class Boundary { Open, Periodic };
enum class Metric { LInf, L1 };

using Site = std::array<int, 2>;   // y component fixed to 0 when d == 1
using Displacement = std::array<int, 2>;

// Finite patch of Z^d, d in {1,2}. Coordinates run over [lo, lo+extent) per axis;
// centered lattices ([-L,L]) just set lo = -L. Site indexing is row-major over
// (x - lo), fixed because operator embedding depends on it bit-exactly.
class Lattice {
 public:
  Lattice(int d, std::array<int, 2> extent, Boundary b, Metric m = Metric::LInf,
          std::array<int, 2> lo = {0, 0});

  static Lattice chain(int n, Boundary b, Metric m = Metric::LInf);
  static Lattice centered(int d, int l, Boundary b, Metric m = Metric::LInf);

  int dim() const { return d_; }
  int extent(int axis) const { return extent_[axis]; }
  int lo(int axis) const { return lo_[axis]; }
  Boundary boundary() const { return boundary_; }
  Metric metric() const { return metric_; }
  int64_t num_sites() const { return nsites_; }

  bool contains(const Site& s) const;
  int site_index(const Site& s) const;      // row-major
  Site index_site(int idx) const;

  // Lattice metric between single sites (torus metric when periodic).
  int site_dist(const Site& a, const Site& b) const;

  // s + x; throws DomainError if an open lattice is escaped.
  Site translate_site(const Site& s, const Displacement& x) const;
  bool can_translate(const Site& s, const Displacement& x) const;

  std::vector<Site> all_sites() const;

 private:
  int d_;
  std::array<int, 2> extent_;
  std::array<int, 2> lo_;
  Boundary boundary_;
  Metric metric_;
  int64_t nsites_;
};

// Finite sorted site set inside a host lattice.
class Region {
 public:
  Region() = default;
  Region(const Lattice& lat, std::vector<Site> sites);

  const std::vector<Site>& sites() const { return sites_; }
  size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  bool contains(const Site& s) const;
  bool contains(const Region& other) const;
  int diam(const Lattice& lat) const;

  static Region single(const Lattice& lat, const Site& s);
  static Region full(const Lattice& lat);

  bool operator==(const Region& o) const { return sites_ == o.sites_; }

 private:
  std::vector<Site> sites_;
};

Region ball(const Lattice& lat, const Site& center, int r);
Region fatten(const Lattice& lat, const Region& region, int r);
int dist(const Lattice& lat, const Region& a, const Region& b);
Region region_union(const Lattice& lat, const Region& a, const Region& b);
Region translate(const Lattice& lat, const Region& a, const Displacement& x);

// Discrete Brillouin zone: p_k = 2*pi*k/N per axis, reported in (-pi, pi].
class MomentumGrid {
 public:
  explicit MomentumGrid(const Lattice& lat);

  int dim() const { return d_; }
  int extent(int axis) const { return n_[axis]; }
  int64_t num_points() const;

  // Flat index <-> per-axis indices (row-major like sites).
  std::array<int, 2> unpack(int flat) const;
  int pack(const std::array<int, 2>& k) const;

  double component(int k, int axis) const;           // value in (-pi, pi]
  std::array<double, 2> point(int flat) const;
  int negate(int flat) const;                         // index of -p mod 2pi
  int add(int flat_a, int flat_b) const;              // p_a + p_b mod 2pi

 private:
  int d_;
  std::array<int, 2> n_;
};

double wrap_to_pi(double p);  // map to (-pi, pi]

}  // namespace hrlab
