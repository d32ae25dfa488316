#include <doctest.h>

#include "lattice.hpp"

using namespace hrlab;

TEST_CASE("balls on open and periodic chains") {
  Lattice open11 = Lattice::centered(1, 5, Boundary::Open);  // sites -5..5
  CHECK(ball(open11, {0, 0}, 0).sites() == std::vector<Site>{{0, 0}});
  Region b2 = ball(open11, {0, 0}, 2);
  CHECK(b2.sites() == std::vector<Site>{{-2, 0}, {-1, 0}, {0, 0}, {1, 0}, {2, 0}});

  // periodic N=11: exhaustive distance enumeration says max distance is 5,
  // so radius 6 covers everything
  Lattice per11 = Lattice::chain(11, Boundary::Periodic);
  int max_dist = 0;
  for (const Site& a : per11.all_sites())
    for (const Site& b : per11.all_sites()) max_dist = std::max(max_dist, per11.site_dist(a, b));
  CHECK(max_dist == 5);
  CHECK(ball(per11, {0, 0}, 6).size() == 11);

  CHECK_THROWS_AS(ball(open11, {7, 0}, 1), DomainError);
}

TEST_CASE("fatten") {
  Lattice lat = Lattice::centered(1, 5, Boundary::Open);
  CHECK(fatten(lat, Region::single(lat, {0, 0}), 3) == ball(lat, {0, 0}, 3));
  Region r(lat, {{0, 0}, {5, 0}});
  CHECK(fatten(lat, r, 1).sites() ==
        std::vector<Site>{{-1, 0}, {0, 0}, {1, 0}, {4, 0}, {5, 0}});
  CHECK_THROWS_AS(fatten(lat, Region(), 1), DomainError);

  Lattice sq = Lattice::centered(2, 2, Boundary::Open);  // 5x5 grid
  Region blk = fatten(sq, Region::single(sq, {0, 0}), 1);
  CHECK(blk.size() == 9);  // l-infinity ball is a 3x3 block
  for (const Site& s : blk.sites()) {
    CHECK(std::abs(s[0]) <= 1);
    CHECK(std::abs(s[1]) <= 1);
  }

  // fatten(fatten(R,a),b) contains fatten(R,a+b), equality on open lattices
  Region inner = fatten(lat, fatten(lat, r, 1), 2);
  CHECK(inner == fatten(lat, r, 3));
}

TEST_CASE("region distance") {
  Lattice open = Lattice::chain(10, Boundary::Open);
  Lattice per = Lattice::chain(10, Boundary::Periodic);
  Region a = Region::single(open, {0, 0});
  Region b = Region::single(open, {7, 0});
  CHECK(dist(open, a, a) == 0);
  CHECK(dist(open, a, b) == 7);
  CHECK(dist(per, Region::single(per, {0, 0}), Region::single(per, {7, 0})) == 3);
  CHECK_THROWS_AS(dist(open, Region(), a), DomainError);
}

TEST_CASE("metric axioms hold exhaustively") {
  for (const Lattice& lat :
       {Lattice::chain(9, Boundary::Periodic), Lattice::chain(8, Boundary::Open),
        Lattice(2, {4, 4}, Boundary::Periodic), Lattice(2, {3, 4}, Boundary::Open, Metric::L1)}) {
    auto sites = lat.all_sites();
    for (const Site& a : sites)
      for (const Site& b : sites) {
        CHECK(lat.site_dist(a, b) == lat.site_dist(b, a));
        CHECK((lat.site_dist(a, b) == 0) == (a == b));
        for (const Site& c : sites)
          CHECK(lat.site_dist(a, c) <= lat.site_dist(a, b) + lat.site_dist(b, c));
      }
  }
}

TEST_CASE("periodic distance is translation covariant") {
  Lattice per = Lattice::chain(12, Boundary::Periodic);
  Region a(per, {{1, 0}, {2, 0}});
  Region b(per, {{7, 0}, {9, 0}});
  const int d0 = dist(per, a, b);
  for (int x = 0; x < 12; ++x)
    CHECK(dist(per, translate(per, a, {x, 0}), translate(per, b, {x, 0})) == d0);
}

TEST_CASE("open translations can escape") {
  Lattice open = Lattice::chain(6, Boundary::Open);
  Region edge = Region::single(open, {5, 0});
  CHECK_THROWS_AS(translate(open, edge, {1, 0}), DomainError);
  CHECK(translate(open, edge, {-2, 0}).sites()[0][0] == 3);
}

TEST_CASE("momentum grid") {
  Lattice per = Lattice::chain(8, Boundary::Periodic);
  MomentumGrid g(per);
  CHECK(g.num_points() == 8);
  for (int k = 0; k < 8; ++k) {
    const double p = g.point(k)[0];
    CHECK(p > -kPi - 1e-12);
    CHECK(p <= kPi + 1e-12);
    // closed under negation: -p is on the grid
    const double np = g.point(g.negate(k))[0];
    CHECK(wrap_to_pi(p + np) == doctest::Approx(0.0).epsilon(1e-12));
  }
  CHECK(g.add(3, 7) == (3 + 7) % 8);

  Lattice sq(2, {3, 3}, Boundary::Periodic);
  MomentumGrid g2(sq);
  CHECK(g2.num_points() == 9);
  CHECK(g2.negate(g2.pack({1, 2})) == g2.pack({2, 1}));
}
