#include <doctest.h>

#include <numeric>

#include "abelian/counterexamples.hpp"
#include "abelian/errors.hpp"
#include "support.hpp"

using namespace abelian;
using abelian::testing::ints;
using abelian::testing::pmf;
using abelian::testing::q;

TEST_CASE("two-point construction on Z(3)") {
  const Group z3 = Group::cyclic(3);
  const auto c = prop2_construction(z3, z3.element(1), q(3, 5));
  CHECK(c.spec.system.a == ints({1, 1}));
  CHECK(c.spec.system.b == ints({1, 1}));
  CHECK(c.spec.system.c == ints({1, 1}));
  CHECK(c.spec.system.d == ints({-2, -2}));
  CHECK(c.spec.dists[0] == pmf(z3, {{0, q(3, 5)}, {1, q(2, 5)}}));
  CHECK(c.certificate.identically_distributed);
  for (const auto& k : c.certificate.classifications) CHECK(k.kind == Classification::Kind::Other);
  for (const auto& r : c.certificate.nonvanishing) CHECK(r.nonvanishing);
  CHECK(c.certificate.condition_set.empty());
  CHECK_FALSE(c.certificate.notes.empty());
}

TEST_CASE("two-point construction on Z(9)") {
  const Group z9 = Group::cyclic(9);
  const auto c = prop2_construction(z9, z9.element(3), q(3, 5));
  CHECK(c.spec.system.d == ints({-2, -2}));
  CHECK(admissible(z9, -3));
  CHECK(c.certificate.identically_distributed);
  CHECK(c.certificate.condition_set == std::vector<std::size_t>{0, 1});
}

TEST_CASE("two-point construction with more copies") {
  const Group z5 = Group::cyclic(5);
  const auto c = prop2_construction(z5, z5.element(2), q(2, 3), 4);
  CHECK(c.spec.system.size() == 4);
  CHECK(c.spec.system.d == ints({-4, -4, -4, -4}));
  CHECK(c.certificate.identically_distributed);
}

TEST_CASE("two-point construction preconditions") {
  const Group z3 = Group::cyclic(3);
  CHECK_THROWS_AS(prop2_construction(z3, z3.element(1), q(1)), PreconditionError);
  CHECK_THROWS_AS(prop2_construction(z3, z3.element(1), q(1, 2)), PreconditionError);
  CHECK_THROWS_AS(prop2_construction(z3, z3.zero(), q(3, 5)), PreconditionError);
  const Group z4 = Group::cyclic(4);
  CHECK_THROWS_AS(prop2_construction(z4, z4.element(1), q(3, 5)), PreconditionError);
  CHECK_THROWS_AS(prop2_construction(z3, z3.element(1), q(3, 5), 1), PreconditionError);
  // just inside the boundary the law is still nondegenerate
  const auto near = prop2_construction(z3, z3.element(1), q(999, 1000));
  CHECK(near.certificate.classifications[0].kind == Classification::Kind::Other);
}

TEST_CASE("Haar construction on Z(2)") {
  const Group z2 = Group::cyclic(2);
  const auto c = haar_construction(z2, 3, {pmf(z2, {{0, q(3, 4)}, {1, q(1, 4)}})});
  CHECK(c.certificate.identically_distributed);
  CHECK(c.certificate.condition_set == std::vector<std::size_t>{0});
  CHECK(c.certificate.classifications[0].kind == Classification::Kind::Other);
  CHECK(c.certificate.classifications[2].kind == Classification::Kind::HaarShift);
  CHECK(c.spec.system.d == ints({0, 0, 1}));
}

TEST_CASE("Haar construction on Z(3)") {
  const Group z3 = Group::cyclic(3);
  const auto c = haar_construction(
      z3, 4, {pmf(z3, {{0, q(1, 2)}, {1, q(1, 3)}, {2, q(1, 6)}}), pmf(z3, {{1, q(2, 7)}, {2, q(5, 7)}})});
  CHECK(c.certificate.identically_distributed);
  CHECK(c.certificate.condition_set == std::vector<std::size_t>{0, 1});
  CHECK(c.certificate.classifications[0].kind == Classification::Kind::Other);
  CHECK(c.certificate.classifications[1].kind == Classification::Kind::Other);
}

TEST_CASE("Haar construction does not depend on the leading laws") {
  std::mt19937_64 rng(109);
  for (const Group& g : {Group::cyclic(2), Group::cyclic(3)}) {
    CHECK(haar_construction(g, 3, {Pmf::degenerate(g, g.zero())}).certificate.identically_distributed);
    for (int trial = 0; trial < 10; ++trial) {
      const auto n = static_cast<std::size_t>(abelian::testing::uniform_int(rng, 3, 5));
      std::vector<Pmf> leading;
      for (std::size_t j = 0; j + 2 < n; ++j) leading.push_back(abelian::testing::random_pmf(g, rng));
      const auto c = haar_construction(g, n, leading);
      CHECK(c.certificate.identically_distributed);
      std::vector<std::size_t> expected(n - 2);
      std::iota(expected.begin(), expected.end(), 0);
      CHECK(c.certificate.condition_set == expected);
    }
  }
  CHECK_THROWS_AS(haar_construction(Group::cyclic(5), 3, {Pmf::haar(Group::cyclic(5))}), PreconditionError);
  CHECK_THROWS_AS(haar_construction(Group::cyclic(2), 2, {}), PreconditionError);
}

TEST_CASE("identity construction") {
  std::mt19937_64 rng(113);
  const Group z5 = Group::cyclic(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = identity_construction(abelian::testing::random_pmf(z5, rng, 4));
    CHECK(c.certificate.identically_distributed);
    CHECK(c.certificate.condition_set.empty());
  }
}

TEST_CASE("certificate counts compared pairs") {
  const Group z3 = Group::cyclic(3);
  const auto c = prop2_construction(z3, z3.element(1), q(3, 5));
  CHECK(c.certificate.pairs_compared > 0);
  CHECK(certify(c.spec).identically_distributed);
}
