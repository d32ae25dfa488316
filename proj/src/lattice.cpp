#include "lattice.hpp"

#include <algorithm>
#include <cmath>

namespace hrlab {

namespace {
int axis_delta(int da, int n, Boundary b) {
  int ad = std::abs(da);
  if (b == Boundary::Periodic) {
    ad %= n;
    ad = std::min(ad, n - ad);
  }
  return ad;
}
}  // namespace

Lattice::Lattice(int d, std::array<int, 2> extent, Boundary b, Metric m, std::array<int, 2> lo)
    : d_(d), extent_(extent), lo_(lo), boundary_(b), metric_(m) {
  if (d < 1 || d > 2) throw DomainError("lattice dimension must be 1 or 2");
  if (d == 1) {
    extent_[1] = 1;
    lo_[1] = 0;
  }
  for (int i = 0; i < d_; ++i)
    if (extent_[i] < 2) throw DomainError("lattice needs at least 2 sites per axis");
  nsites_ = static_cast<int64_t>(extent_[0]) * extent_[1];
}

Lattice Lattice::chain(int n, Boundary b, Metric m) { return Lattice(1, {n, 1}, b, m); }

Lattice Lattice::centered(int d, int l, Boundary b, Metric m) {
  int n = 2 * l + 1;
  return Lattice(d, {n, n}, b, m, {-l, -l});
}

bool Lattice::contains(const Site& s) const {
  for (int i = 0; i < d_; ++i)
    if (s[i] < lo_[i] || s[i] >= lo_[i] + extent_[i]) return false;
  if (d_ == 1 && s[1] != 0) return false;
  return true;
}

int Lattice::site_index(const Site& s) const {
  if (!contains(s)) throw DomainError("site outside lattice");
  return (s[0] - lo_[0]) * extent_[1] + (s[1] - lo_[1]);
}

Site Lattice::index_site(int idx) const {
  Site s;
  s[0] = lo_[0] + idx / extent_[1];
  s[1] = lo_[1] + idx % extent_[1];
  return s;
}

int Lattice::site_dist(const Site& a, const Site& b) const {
  int dx = axis_delta(a[0] - b[0], extent_[0], boundary_);
  int dy = d_ == 2 ? axis_delta(a[1] - b[1], extent_[1], boundary_) : 0;
  return metric_ == Metric::LInf ? std::max(dx, dy) : dx + dy;
}

bool Lattice::can_translate(const Site& s, const Displacement& x) const {
  if (boundary_ == Boundary::Periodic) return true;
  Site t = {s[0] + x[0], d_ == 2 ? s[1] + x[1] : 0};
  return contains(t);
}

Site Lattice::translate_site(const Site& s, const Displacement& x) const {
  Site t = {s[0] + x[0], d_ == 2 ? s[1] + x[1] : 0};
  if (boundary_ == Boundary::Periodic) {
    for (int i = 0; i < d_; ++i) {
      int rel = t[i] - lo_[i];
      rel %= extent_[i];
      if (rel < 0) rel += extent_[i];
      t[i] = lo_[i] + rel;
    }
    return t;
  }
  if (!contains(t)) throw DomainError("translation escapes open lattice");
  return t;
}

std::vector<Site> Lattice::all_sites() const {
  std::vector<Site> out;
  out.reserve(nsites_);
  for (int i = 0; i < nsites_; ++i) out.push_back(index_site(i));
  return out;
}

Region::Region(const Lattice& lat, std::vector<Site> sites) : sites_(std::move(sites)) {
  for (const Site& s : sites_)
    if (!lat.contains(s)) throw DomainError("region site outside lattice");
  std::sort(sites_.begin(), sites_.end());
  sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
}

bool Region::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

bool Region::contains(const Region& other) const {
  for (const Site& s : other.sites_)
    if (!contains(s)) return false;
  return true;
}

int Region::diam(const Lattice& lat) const {
  int d = 0;
  for (size_t i = 0; i < sites_.size(); ++i)
    for (size_t j = i + 1; j < sites_.size(); ++j)
      d = std::max(d, lat.site_dist(sites_[i], sites_[j]));
  return d;
}

Region Region::single(const Lattice& lat, const Site& s) { return Region(lat, {s}); }

Region Region::full(const Lattice& lat) { return Region(lat, lat.all_sites()); }

Region ball(const Lattice& lat, const Site& center, int r) {
  if (!lat.contains(center)) throw DomainError("ball center outside lattice");
  if (r < 0) throw DomainError("ball radius must be non-negative");
  std::vector<Site> acc;
  for (const Site& s : lat.all_sites())
    if (lat.site_dist(s, center) <= r) acc.push_back(s);
  return Region(lat, std::move(acc));
}

Region fatten(const Lattice& lat, const Region& region, int r) {
  if (region.empty()) throw DomainError("fatten: empty region");
  std::vector<Site> acc;
  for (const Site& s : lat.all_sites()) {
    for (const Site& t : region.sites())
      if (lat.site_dist(s, t) <= r) {
        acc.push_back(s);
        break;
      }
  }
  return Region(lat, std::move(acc));
}

int dist(const Lattice& lat, const Region& a, const Region& b) {
  if (a.empty() || b.empty()) throw DomainError("dist: empty region");
  int best = INT32_MAX;
  for (const Site& s : a.sites())
    for (const Site& t : b.sites()) best = std::min(best, lat.site_dist(s, t));
  return best;
}

Region region_union(const Lattice& lat, const Region& a, const Region& b) {
  std::vector<Site> acc = a.sites();
  acc.insert(acc.end(), b.sites().begin(), b.sites().end());
  return Region(lat, std::move(acc));
}

Region translate(const Lattice& lat, const Region& a, const Displacement& x) {
  std::vector<Site> acc;
  acc.reserve(a.size());
  for (const Site& s : a.sites()) acc.push_back(lat.translate_site(s, x));
  return Region(lat, std::move(acc));
}

MomentumGrid::MomentumGrid(const Lattice& lat) : d_(lat.dim()) {
  n_ = {lat.extent(0), d_ == 2 ? lat.extent(1) : 1};
}

int64_t MomentumGrid::num_points() const { return static_cast<int64_t>(n_[0]) * n_[1]; }

std::array<int, 2> MomentumGrid::unpack(int flat) const {
  return {flat / n_[1], flat % n_[1]};
}

int MomentumGrid::pack(const std::array<int, 2>& k) const {
  int k0 = ((k[0] % n_[0]) + n_[0]) % n_[0];
  int k1 = ((k[1] % n_[1]) + n_[1]) % n_[1];
  return k0 * n_[1] + k1;
}

double MomentumGrid::component(int k, int axis) const {
  return wrap_to_pi(2.0 * kPi * k / n_[axis]);
}

std::array<double, 2> MomentumGrid::point(int flat) const {
  auto k = unpack(flat);
  return {component(k[0], 0), d_ == 2 ? component(k[1], 1) : 0.0};
}

int MomentumGrid::negate(int flat) const {
  auto k = unpack(flat);
  return pack({-k[0], -k[1]});
}

int MomentumGrid::add(int a, int b) const {
  auto ka = unpack(a), kb = unpack(b);
  return pack({ka[0] + kb[0], ka[1] + kb[1]});
}

double wrap_to_pi(double p) {
  p = std::fmod(p, 2.0 * kPi);
  if (p > kPi) p -= 2.0 * kPi;
  if (p <= -kPi) p += 2.0 * kPi;
  return p;
}

}  // namespace hrlab
