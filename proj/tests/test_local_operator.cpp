#include <doctest.h>

#include <random>

#include "local_operator.hpp"

using namespace hrlab;

namespace {
Lattice chain8() { return Lattice::chain(8, Boundary::Open); }

LocalOperator random_on(const Lattice& lat, const Region& r, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const int d = int(int64_t{1} << r.size());
  CMat m(d, d);
  for (auto& z : m.a) z = cx(g(rng), g(rng));
  return LocalOperator(lat, r, std::move(m), "rand");
}
}  // namespace

TEST_CASE("embed basics") {
  Lattice lat = chain8();
  LocalOperator s3 = LocalOperator::pauli(lat, {0, 0}, 3);
  // identity embedding
  CHECK(embed(s3, s3.support()).to_dense_matrix().max_abs() == 1.0);
  // sigma3 (x) 1 has eigenvalues {1,1,-1,-1}
  Region two(lat, {{0, 0}, {1, 0}});
  auto eig = eigh(embed(s3, two).to_dense_matrix());
  CHECK(eig.evals[0] == doctest::Approx(-1));
  CHECK(eig.evals[1] == doctest::Approx(-1));
  CHECK(eig.evals[2] == doctest::Approx(1));
  CHECK(eig.evals[3] == doctest::Approx(1));
  // embedding is isometric
  LocalOperator xx = LocalOperator::pauli_string(lat, {{0, 0}, {1, 0}}, {1, 1});
  Region three(lat, {{0, 0}, {1, 0}, {2, 0}});
  CHECK(op_norm(embed(xx, three)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(embed(xx, Region::single(lat, {0, 0})), DomainError);
}

TEST_CASE("translate") {
  Lattice lat = chain8();
  LocalOperator s1 = LocalOperator::pauli(lat, {0, 0}, 1);
  LocalOperator same = translate(s1, {0, 0});
  CHECK(same.support() == s1.support());
  LocalOperator moved = translate(s1, {3, 0});
  CHECK(moved.support().sites()[0][0] == 3);
  CHECK(op_norm(moved) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(translate(s1, {-1, 0}), DomainError);

  // periodic N=4: fourfold translation is the identity on every operator
  Lattice per = Lattice::chain(4, Boundary::Periodic);
  std::mt19937_64 rng(42);
  LocalOperator a = random_on(per, Region(per, {{1, 0}, {2, 0}}), rng);
  LocalOperator b = a;
  for (int i = 0; i < 4; ++i) b = translate(b, {1, 0});
  CHECK(add(a, -1.0, b).to_dense_matrix().max_abs() < 1e-14);
}

TEST_CASE("commutators") {
  Lattice lat = chain8();
  LocalOperator s1 = LocalOperator::pauli(lat, {0, 0}, 1);
  LocalOperator s3_1 = LocalOperator::pauli(lat, {1, 0}, 3);
  // disjoint supports: exactly the zero sparse matrix, no tolerance
  CHECK(commutator(s1, s3_1).to_sparse_matrix().nnz() == 0);
  // same-site Pauli algebra: [sigma1, sigma3] = -2i sigma2
  LocalOperator s3_0 = LocalOperator::pauli(lat, {0, 0}, 3);
  LocalOperator c = commutator(s1, s3_0);
  LocalOperator expect = LocalOperator::pauli(lat, {0, 0}, 2).scaled(cx(0, -2));
  CHECK(add(c, -1.0, expect).to_dense_matrix().max_abs() < 1e-14);
  // anything commutes with the identity
  LocalOperator one = LocalOperator::identity(lat, Region(lat, {{0, 0}, {3, 0}}));
  CHECK(op_norm(commutator(s1, one)) < 1e-14);
}

TEST_CASE("locality: 1000 randomized disjoint pairs commute exactly") {
  Lattice lat = chain8();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 7);
  int done = 0;
  while (done < 1000) {
    int a0 = pick(rng), a1 = pick(rng), b0 = pick(rng), b1 = pick(rng);
    std::vector<Site> sa = {{a0, 0}, {a1, 0}}, sb = {{b0, 0}, {b1, 0}};
    Region ra(lat, sa), rb(lat, sb);
    bool disjoint = true;
    for (const Site& s : ra.sites())
      if (rb.contains(s)) disjoint = false;
    if (!disjoint) continue;
    LocalOperator a = random_on(lat, ra, rng), b = random_on(lat, rb, rng);
    CHECK(commutator(a, b).to_sparse_matrix().nnz() == 0);
    ++done;
  }
}

TEST_CASE("operator norm") {
  Lattice lat = chain8();
  CHECK(op_norm(LocalOperator::pauli(lat, {0, 0}, 1)) == doctest::Approx(1.0));
  CHECK(op_norm(LocalOperator::zero(lat, Region::single(lat, {0, 0}))) == 0.0);
  // sigma1 + sigma3 has eigenvalues +-sqrt(2)
  LocalOperator s13 = add(LocalOperator::pauli(lat, {0, 0}, 1), 1.0,
                          LocalOperator::pauli(lat, {0, 0}, 3));
  CHECK(op_norm(s13) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("norm isometry under embed and translate, randomized") {
  Lattice lat = chain8();
  std::mt19937_64 rng(11);
  for (int i = 0; i < 20; ++i) {
    LocalOperator a = random_on(lat, Region(lat, {{2, 0}, {3, 0}}), rng);
    const double n0 = op_norm(a);
    CHECK(op_norm(embed(a, Region(lat, {{1, 0}, {2, 0}, {3, 0}, {4, 0}}))) ==
          doctest::Approx(n0).epsilon(1e-12));
    CHECK(op_norm(translate(a, {2, 0})) == doctest::Approx(n0).epsilon(1e-12));
  }
}

TEST_CASE("conditional expectation") {
  Lattice lat = chain8();
  LocalOperator s1 = LocalOperator::pauli(lat, {0, 0}, 1);
  Region site0 = Region::single(lat, {0, 0});
  // already localized: unchanged
  LocalOperator p0 = conditional_expectation(s1, site0);
  CHECK(add(p0, -1.0, s1).to_dense_matrix().max_abs() < 1e-15);
  // tracial state kills sigma1 on the traced factor
  LocalOperator xx = LocalOperator::pauli_string(lat, {{0, 0}, {1, 0}}, {1, 1});
  CHECK(op_norm(conditional_expectation(xx, site0)) < 1e-15);
  // partial trace of the identity factor is transparent
  Region pair(lat, {{0, 0}, {1, 0}});
  LocalOperator s3e = embed(LocalOperator::pauli(lat, {0, 0}, 3), pair);
  LocalOperator back = conditional_expectation(s3e, site0);
  CHECK(add(back, -1.0, LocalOperator::pauli(lat, {0, 0}, 3)).to_dense_matrix().max_abs() <
        1e-15);
  CHECK_THROWS_AS(conditional_expectation(s1, pair), DomainError);
}

TEST_CASE("conditional expectation is a norm-one projection, randomized") {
  Lattice lat = chain8();
  std::mt19937_64 rng(13);
  Region host(lat, {{0, 0}, {1, 0}, {2, 0}, {3, 0}});
  Region target(lat, {{1, 0}, {2, 0}});
  for (int i = 0; i < 25; ++i) {
    LocalOperator a = random_on(lat, host, rng);
    LocalOperator p1 = conditional_expectation(a, target);
    LocalOperator p2 = conditional_expectation(embed(p1, host), target);
    CHECK(add(p1, -1.0, p2).to_dense_matrix().max_abs() < 1e-12);  // idempotent
    CHECK(op_norm(p1) <= op_norm(a) * (1 + 1e-12));                // contractive
  }
}

TEST_CASE("hermitian flag verification") {
  Lattice lat = chain8();
  CHECK(LocalOperator::pauli(lat, {0, 0}, 2).check_hermitian(1e-12));
  LocalOperator nh = LocalOperator::pauli(lat, {0, 0}, 1).scaled(cx(0, 1));
  CHECK(!nh.check_hermitian(1e-12));
}
