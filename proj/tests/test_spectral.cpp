#include <doctest.h>

#include <Eigen/Dense>

#include "abelian/spectral.hpp"
#include "support.hpp"

using namespace abelian;
using abelian::testing::pmf;
using abelian::testing::q;

namespace {

// Floating-point rank of the stacked constraints Delta_h^{l+1} f(y) = 0.
std::size_t oracle_dimension(const Group& g, unsigned l, bool vanish) {
  const auto dual = g.finite_dual();
  const auto n = static_cast<Eigen::Index>(dual.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n * n + 1, n);
  Eigen::Index row = 0;
  for (const auto& h : dual) {
    for (const auto& y : dual) {
      double binom = 1;
      DualPoint point = y;
      for (unsigned k = 0; k <= l + 1; ++k) {
        const double sign = (l + 1 - k) % 2 == 1 ? -1.0 : 1.0;
        m(row, g.torsion_index(point.torsion)) += sign * binom;
        point = g.dual_add(point, h);
        binom = binom * (l + 1 - k) / (k + 1);
      }
      ++row;
    }
  }
  if (vanish) m(row, 0) = 1;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-9);
  return static_cast<std::size_t>(n - lu.rank());
}

}  // namespace

TEST_CASE("characteristic function examples") {
  const Group z3 = Group::cyclic(3);
  for (const auto& y : z3.finite_dual()) {
    CHECK(std::abs(char_fn(Pmf::degenerate(z3, z3.zero()), y) - 1.0) < 1e-12);
  }
  const Group z2 = Group::cyclic(2);
  CHECK(char_fn_exact(Pmf::haar(z2), z2.dual_point({1})).is_zero());
  const auto mu = pmf(z3, {{0, q(3, 5)}, {1, q(2, 5)}});
  const auto v = char_fn(mu, z3.dual_point({1}));
  CHECK(v.real() == doctest::Approx(0.4));
  CHECK(v.imag() == doctest::Approx(std::sqrt(3.0) / 5));
  const Group z4 = Group::cyclic(4);
  const auto m = Pmf::haar(z4, Subgroup::generated(z4, {z4.element(2)}));
  for (std::int64_t y = 0; y < 4; ++y) {
    const auto value = char_fn_exact(m, z4.dual_point({y})).as_rational();
    REQUIRE(value);
    CHECK(*value == (y % 2 == 0 ? 1 : 0));
  }
}

TEST_CASE("nonvanishing examples") {
  const Group z5 = Group::cyclic(5);
  CHECK(nonvanishing(Pmf::degenerate(z5, z5.element(3))).nonvanishing);
  for (const Group& g : {Group::cyclic(4), Group(0, {2, 2})}) {
    for (const auto& k : subgroups(g)) {
      if (k.order() > 1) CHECK_FALSE(nonvanishing(Pmf::haar(g, k)).nonvanishing);
    }
  }
  const Group z3 = Group::cyclic(3);
  const auto r = nonvanishing(pmf(z3, {{0, q(3, 5)}, {1, q(2, 5)}}));
  CHECK(r.nonvanishing);
  CHECK(r.exhaustive);
  CHECK(r.points_checked == 3);
  const Group z = Group::lattice(1);
  const auto coin = nonvanishing(pmf(z, {{0, q(1, 2)}, {1, q(1, 2)}}));
  CHECK_FALSE(coin.nonvanishing);
  CHECK_FALSE(coin.exhaustive);
  REQUIRE(coin.zero_at);
  CHECK(coin.zero_at->lattice[0] == q(1, 2));
  CHECK(nonvanishing(pmf(z, {{0, q(2, 3)}, {1, q(1, 3)}})).nonvanishing);
}

TEST_CASE("transform of algebraic operations") {
  std::mt19937_64 rng(17);
  for (const Group& g : {Group::cyclic(5), Group(0, {2, 6}), Group(1, {3})}) {
    const auto grid = dual_grid(g, 8);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = abelian::testing::random_pmf(g, rng);
      const auto b = abelian::testing::random_pmf(g, rng);
      for (const auto& y : grid) {
        CHECK(char_fn_exact(convolve(a, b), y) == char_fn_exact(a, y) * char_fn_exact(b, y));
        CHECK(char_fn_exact(reflect(a), y) == char_fn_exact(a, y).conj());
        CHECK(char_fn_exact(pushforward(3, a), y) == char_fn_exact(a, g.dual_scale(3, y)));
        CHECK(std::abs(char_fn(a, y) - char_fn_exact(a, y).to_complex()) < 1e-12);
      }
    }
  }
}

TEST_CASE("inverse transform") {
  const Group z4 = Group::cyclic(4);
  CharFnTable ones{z4, {}};
  for (const auto& y : z4.finite_dual()) ones.entries.push_back({y, 1.0, false});
  CHECK(inverse_transform(ones) == Pmf::degenerate(z4, z4.zero()));
  const auto k = Subgroup::generated(z4, {z4.element(2)});
  const auto ann = annihilator(z4, k);
  CharFnTable indicator{z4, {}};
  for (const auto& y : z4.finite_dual()) {
    indicator.entries.push_back({y, ann.contains(z4.element({}, y.torsion)) ? 1.0 : 0.0, false});
  }
  CHECK(inverse_transform(indicator) == Pmf::haar(z4, k));
}

TEST_CASE("inverse transform round trip") {
  std::mt19937_64 rng(19);
  for (const Group& g : {Group::cyclic(7), Group(0, {2, 6}), Group(0, {3, 3})}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto mu = abelian::testing::random_pmf(g, rng, 5, 12);
      CHECK(inverse_transform(char_fn_table(mu)) == mu);
      std::vector<Cyclotomic> values;
      for (const auto& y : g.finite_dual()) values.push_back(char_fn_exact(mu, y));
      CHECK(inverse_transform_exact(g, values) == mu);
    }
  }
}

TEST_CASE("best rational") {
  CHECK(best_rational(0.333333333333, 100) == q(1, 3));
  CHECK(best_rational(-0.75, 10) == q(-3, 4));
}

TEST_CASE("parallelogram examples") {
  const Group z3 = Group::cyclic(3);
  CHECK(parallelogram_check(z3, DualFunction<Rational>(3, Rational(0))));
  CHECK_FALSE(parallelogram_check(z3, DualFunction<Rational>(3, Rational(5))));
  CHECK(parallelogram_solution_space(z3).empty());
  for (const Group& g : {Group::cyclic(2), Group::cyclic(5), Group(0, {2, 2})}) {
    CHECK(parallelogram_solution_space(g).empty());
  }
}

TEST_CASE("polynomial examples") {
  const Group z5 = Group::cyclic(5);
  CHECK(is_polynomial(z5, DualFunction<double>(5, 2.5), 0));
  DualFunction<double> re(5);
  for (int y = 0; y < 5; ++y) re[y] = std::cos(2 * M_PI * y / 5);
  CHECK_FALSE(is_polynomial(z5, re, 3));
  const DualPoint one = z5.dual_point({1});
  CHECK(std::abs(iterated_difference(z5, re, z5.dual_zero(), one, 4)) > 1e-3);
}

TEST_CASE("polynomial space dimension agrees with rank oracle") {
  std::vector<Group> groups;
  for (std::int64_t n = 2; n <= 8; ++n) groups.push_back(Group::cyclic(n));
  groups.push_back(Group(0, {2, 2}));
  groups.push_back(Group(0, {2, 4}));
  groups.push_back(Group(0, {3, 3}));
  groups.push_back(square(Group::cyclic(3)));
  for (const auto& g : groups) {
    for (unsigned l = 0; l <= 3; ++l) {
      for (bool vanish : {false, true}) {
        const auto dim = polynomial_space_dimension(g, l, vanish);
        CHECK_MESSAGE(dim == oracle_dimension(g, l, vanish), g.name() << " l=" << l);
        CHECK(dim == (vanish ? 0u : 1u));
      }
    }
  }
}

TEST_CASE("square") {
  CHECK(square(Group::cyclic(3)) == Group(0, {3, 3}));
  CHECK(square(Group(0, {2, 4})) == Group(0, {2, 2, 4, 4}));
}
