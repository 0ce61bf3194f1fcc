#include <doctest.h>

#include <numeric>

#include "abelian/elimination.hpp"
#include "planted.hpp"
#include "support.hpp"

using namespace abelian;
using namespace abelian::testing;

TEST_CASE("single step") {
  const FunctionalEquation eq{{{2, 3}}, {{1, 4}}, std::nullopt};
  const auto d = eliminate(eq);
  REQUIRE(d.per_function.size() == 1);
  const auto& f = d.per_function[0];
  CHECK(f.steps.size() == 1);
  CHECK(d.removal_steps() == 1);
  REQUIRE(f.final_term.ops.size() == 1);
  CHECK(f.final_term.ops[0].shift == single(2 * 4 - 3 * 1, k_sym(0)));
  CHECK(f.result.live_functions() == 1);
  CHECK(f.result.rhs.empty());
  CHECK(f.steps[0].u_shift == single(4, k_sym(0)));
  CHECK(f.steps[0].v_shift == single(-1, k_sym(0)));
}

TEST_CASE("first step factors on the right") {
  std::mt19937_64 rng(53);
  const auto eq = random_equation(rng, 2, 3, std::nullopt);
  CascadeStep step;
  const auto out = cascade_step(eq.initial(), {FunctionRef::Family::Psi, 2}, k_sym(2), &step);
  CHECK(out.rhs.size() == 2);
  for (std::size_t j = 0; j < 2; ++j) {
    const auto [c, d] = eq.psi[j];
    const auto [cn, dn] = eq.psi[2];
    REQUIRE(out.rhs[j].ops.size() == 1);
    CHECK(out.rhs[j].ops[0].shift == single(c * dn - d * cn, k_sym(2)));
  }
}

TEST_CASE("zero shift gives the zero equation") {
  const FunctionalEquation eq{{{2, 3}}, {{2, 3}}, std::nullopt};
  const auto d = eliminate(eq);
  CHECK(d.per_function[0].has_zero_shift);
  CHECK(d.per_function[0].result.is_zero());
  CHECK(d.per_function[0].steps[0].vanished.size() == 1);
}

TEST_CASE("factor formulas") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 4));
    const bool with_q = trial % 2 == 0;
    const auto l = static_cast<unsigned>(uniform_int(rng, 0, 3));
    const auto eq = random_equation(rng, m, n, with_q ? std::optional<unsigned>(l) : std::nullopt);
    const auto d = eliminate(eq);
    CHECK(d.removal_steps() == n + m - 1);
    REQUIRE(d.per_function.size() == m);
    for (std::size_t j = 0; j < m; ++j) {
      const auto [a, b] = eq.phi[j];
      const auto& ops = d.per_function[j].final_term.ops;
      std::vector<DeltaFactor> expected;
      for (std::size_t t = n; t-- > 0;) {
        expected.push_back({single(a * eq.psi[t].second - b * eq.psi[t].first, k_sym(t)), 1});
      }
      for (std::size_t i = m; i-- > 0;) {
        if (i != j) expected.push_back({single(a * eq.phi[i].second - b * eq.phi[i].first, l_sym(i)), 1});
      }
      if (with_q) expected.push_back({single(a, kH) + single(b, kKPoly), l + 1});
      CHECK(ops == expected);
      CHECK(d.per_function[j].steps.size() == n + m - 1 + (with_q ? 1 : 0));
      CHECK(d.per_function[j].result.lhs.size() == 1);
      CHECK(d.per_function[j].result.rhs.empty());
      CHECK(d.per_function[j].result.q_killed == with_q);
      unsigned total = 0;
      for (const auto& op : ops) total += op.power;
      CHECK(total == n + m - 1 + (with_q ? l + 1 : 0));
    }
  }
}

TEST_CASE("specialization with L3 = L1 and L4 = -L2") {
  const auto a = ints({1, 2, -1});
  const auto b = ints({3, 1, 1});
  FormSystem s{a, b, a, {-b[0], -b[1], -b[2]}};
  const auto d = eliminate(s, 3, std::nullopt);
  for (std::size_t j = 0; j < 3; ++j) {
    const auto& ops = d.per_function[j].final_term.ops;
    for (std::size_t t = 0; t < 3; ++t) {
      CHECK(ops[2 - t].shift == single(-(a[j] * b[t] + b[j] * a[t]), k_sym(t)));
    }
  }
}

TEST_CASE("degree bound with a polynomial term") {
  const FunctionalEquation eq{{{1, 1}, {1, -1}}, {{1, 0}, {0, 1}}, 1u};
  const auto d = eliminate(eq);
  for (const auto& f : d.per_function) {
    unsigned total = 0;
    for (const auto& op : f.final_term.ops) total += op.power;
    CHECK(total == 2 + 2 + 1);
    CHECK(f.steps.back().kill);
  }
}

TEST_CASE("trace mentions every substitution") {
  const auto d = eliminate(FormSystem{ints({1, 1}), ints({1, -1}), ints({1, 1}), ints({-1, 1})}, 2, 0u);
  const auto trace = proof_trace(d);
  CHECK(trace.find("k2") != std::string::npos);
  CHECK(trace.find("l2") != std::string::npos);
  CHECK(trace.find("D[(h, k)]") != std::string::npos);
}

TEST_CASE("zero residual gives zero derived residual") {
  const Group y(0, {7, 7});
  std::mt19937_64 rng(61);
  const auto eq = random_equation(rng, 2, 2, std::nullopt);
  const auto d = eliminate(eq);
  FunctionTuple<Rational> zero{{DualFunction<Rational>(49, 0), DualFunction<Rational>(49, 0)},
                               {DualFunction<Rational>(49, 0), DualFunction<Rational>(49, 0)},
                               {}};
  const auto values = random_shifts(y, rng, 2, 2);
  for (const auto& f : d.per_function) CHECK(all_zero(derived_residual(y, f, zero, values)));
}

TEST_CASE("cascade and composed operator agree on Z(7)^2") {
  const Group y(0, {7, 7});
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 12; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const bool with_q = trial % 3 == 0;
    const auto eq = random_equation(rng, m, n, with_q ? std::optional<unsigned>(1) : std::nullopt);
    const auto d = eliminate(eq);
    FunctionTuple<Rational> fns;
    for (std::size_t j = 0; j < m; ++j) fns.phi.push_back(random_function<Rational>(49, rng));
    for (std::size_t j = 0; j < n; ++j) fns.psi.push_back(random_function<Rational>(49, rng));
    if (with_q) fns.q = random_function<Rational>(49 * 49, rng);
    const auto values = random_shifts(y, rng, m, n);
    for (const auto& f : d.per_function) {
      const auto composed = evaluate_equation(y, f.result, fns, values);
      CHECK(cascade_residual(y, eq, f, fns, values) == composed);
      if (!with_q) CHECK(derived_residual(y, f, fns, values) == composed);
    }
  }
}

TEST_CASE("planted quadratic solutions are annihilated") {
  const Group y(0, {7, 7});
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 8; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto eq = random_equation(rng, m, n, 2u);
    FunctionTuple<Mod7> fns;
    for (std::size_t j = 0; j < m; ++j) fns.phi.push_back(random_quadratic(y, rng));
    for (std::size_t j = 0; j < n; ++j) fns.psi.push_back(random_quadratic(y, rng));
    fns.q = planted_q(y, eq, fns);
    const auto values = random_shifts(y, rng, m, n);
    CHECK(all_zero(evaluate_equation(y, eq.initial(), fns, values)));
    for (const auto& f : eliminate(eq).per_function) {
      CHECK(all_zero(derived_residual(y, f, fns, values)));
      CHECK(all_zero(cascade_residual(y, eq, f, fns, values)));
    }
  }
}

TEST_CASE("planted relabeling solutions are annihilated") {
  const Group y(0, {7, 7});
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 8; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    auto eq = random_equation(rng, n, n, std::nullopt);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FunctionTuple<Rational> fns;
    for (std::size_t j = 0; j < n; ++j) fns.phi.push_back(random_function<Rational>(49, rng));
    for (std::size_t t = 0; t < n; ++t) {
      eq.psi[t] = eq.phi[perm[t]];
      fns.psi.push_back(fns.phi[perm[t]]);
    }
    const auto values = random_shifts(y, rng, n, n);
    CHECK(all_zero(evaluate_equation(y, eq.initial(), fns, values)));
    for (const auto& f : eliminate(eq).per_function) {
      CHECK(all_zero(derived_residual(y, f, fns, values)));
    }
  }
}

TEST_CASE("difference operators commute") {
  const Group y(0, {7, 7});
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 6; ++trial) {
    const auto eq = random_equation(rng, 3, 2, 1u);
    const auto d = eliminate(eq);
    FunctionTuple<Rational> fns;
    for (int j = 0; j < 3; ++j) fns.phi.push_back(random_function<Rational>(49, rng));
    const auto values = random_shifts(y, rng, 3, 2);
    for (auto f : d.per_function) {
      const auto before = derived_residual(y, f, fns, values);
      std::shuffle(f.final_term.ops.begin(), f.final_term.ops.end(), rng);
      CHECK(derived_residual(y, f, fns, values) == before);
      CHECK(reading_order(f.final_term).size() == f.final_term.ops.size());
    }
  }
}
