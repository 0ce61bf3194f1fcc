// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "../planted.hpp"
#include "../support.hpp"
#include "abelian/counterexamples.hpp"
#include "abelian/elimination.hpp"
#include "abelian/engine.hpp"
#include "abelian/reduction.hpp"
#include "abelian/sweep.hpp"

using namespace abelian;
using namespace abelian::testing;

namespace {

struct Outcome {
  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> info;

  void check(std::string label, bool ok) { checks.emplace_back(std::move(label), ok); }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
  }
};

int failures = 0;

void run(int number, const std::string& title, double budget_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.check(std::string("threw: ") + e.what(), false);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.check("time < " + std::to_string(static_cast<int>(budget_seconds)) + " s", seconds < budget_seconds);
  const bool ok = out.ok();
  failures += !ok;
  std::printf("%s [%d] %s (%.2f s)\n", ok ? "PASS" : "FAIL", number, title.c_str(), seconds);
  for (const auto& [label, passed] : out.checks) std::printf("    %s %s\n", passed ? "ok  " : "FAIL", label.c_str());
  for (const auto& line : out.info) std::printf("    info %s\n", line.c_str());
  std::fflush(stdout);
}

std::string indices_string(const std::vector<std::size_t>& xs) {
  std::ostringstream s;
  s << "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? "," : "") << xs[i] + 1;
  s << "}";
  return s.str();
}

std::vector<std::size_t> first_n(std::size_t n) {
  std::vector<std::size_t> out(n);
  std::iota(out.begin(), out.end(), 0);
  return out;
}

// Pointwise comparison of the laws of (L1, L2) and (L3, L4) on every point of X^2.
std::pair<bool, std::size_t> compare_on_square(const InstanceSpec& spec) {
  const Group& g = spec.group;
  const auto left = joint_pmf(g, spec.system.a, spec.system.b, spec.dists);
  const auto right = joint_pmf(g, spec.system.c, spec.system.d, spec.dists);
  std::size_t points = 0;
  bool equal = true;
  for (const auto& x : g.torsion_elements()) {
    for (const auto& y : g.torsion_elements()) {
      auto weight = [&](const JointPmf& j) {
        const auto it = j.atoms.find({x, y});
        return it == j.atoms.end() ? Rational(0) : it->second;
      };
      equal = equal && weight(left) == weight(right);
      ++points;
    }
  }
  return {equal, points};
}

void two_point_law(Outcome& out) {
  const Group z3 = Group::cyclic(3);
  const auto c = prop2_construction(z3, z3.element(1), q(3, 5));
  const auto [equal, points] = compare_on_square(c.spec);
  out.check("identically distributed (exact)", c.certificate.identically_distributed);
  out.check("joint laws agree on all " + std::to_string(points) + " points of Z(3)^2", equal && points == 9);
  const auto scan = scan_equation_residual(c.spec);
  out.check("characteristic-function residual exactly zero on all " + std::to_string(scan.pairs) + " dual pairs",
            scan.exact_zero);
  out.check("condition set = {1,2} (got " + indices_string(c.certificate.condition_set) + ")",
            c.certificate.condition_set == std::vector<std::size_t>{0, 1});
  out.check("classify(mu) = Other", classify(c.spec.dists[0]).kind == Classification::Kind::Other);
  bool nonvanishing_all = true;
  for (const auto& r : c.certificate.nonvanishing) nonvanishing_all = nonvanishing_all && r.nonvanishing && r.exhaustive;
  out.check("nonvanishing = true", nonvanishing_all);
  out.info.push_back("determinants a_i d_j - b_i c_j = -3 and admissible(Z(3), -3) = " +
                     std::string(admissible(z3, -3) ? "true" : "false"));

  const Group z9 = Group::cyclic(9);
  const auto c9 = prop2_construction(z9, z9.element(3), q(3, 5));
  const auto v9 = verify_instance(c9.spec);
  out.info.push_back("Z(9), x0 = 3: identically distributed = " +
                     std::string(c9.certificate.identically_distributed ? "true" : "false") + ", condition set " +
                     indices_string(c9.certificate.condition_set) + ", counterexample regime = " +
                     (v9.counterexample_regime ? "true" : "false"));
}

void haar_counterexample(Outcome& out) {
  const Group z2 = Group::cyclic(2);
  const Group z3 = Group::cyclic(3);
  const std::vector<std::pair<Group, std::vector<Pmf>>> cases{
      {z2, {pmf(z2, {{0, q(3, 4)}, {1, q(1, 4)}})}},
      {z3, {pmf(z3, {{0, q(1, 2)}, {1, q(1, 3)}, {2, q(1, 6)}}), pmf(z3, {{1, q(2, 7)}, {2, q(5, 7)}})}},
  };
  for (const auto& [g, leading] : cases) {
    const std::size_t n = leading.size() + 2;
    const auto c = haar_construction(g, n, leading);
    const std::string tag = g.name() + ", n=" + std::to_string(n) + ": ";
    const auto [equal, points] = compare_on_square(c.spec);
    out.check(tag + "identically distributed (exact, " + std::to_string(points) + " points)",
              c.certificate.identically_distributed && equal);
    out.check(tag + "condition set = " + indices_string(first_n(n - 2)),
              c.certificate.condition_set == first_n(n - 2));
    bool other = true;
    for (std::size_t j = 0; j + 2 < n; ++j) other = other && classify(leading[j]).kind == Classification::Kind::Other;
    out.check(tag + "leading distributions classified Other", other);
  }
}

void laws_residual_equivalence(Outcome& out) {
  std::mt19937_64 rng(0x1e77a1);
  for (const Group& g : {Group::cyclic(4), Group::cyclic(5), Group(0, {2, 6})}) {
    std::size_t agree_exact = 0, agree_float = 0, equal = 0;
    double max_equal = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
      auto spec = random_instance(g, rng, n);
      if (trial % 3 == 0) {
        std::vector<std::size_t> perm = first_n(n);
        std::shuffle(perm.begin(), perm.end(), rng);
        const Pmf shared = spec.dists[0];
        for (auto& d : spec.dists) d = shared;
        for (std::size_t j = 0; j < n; ++j) {
          spec.system.c[j] = spec.system.a[perm[j]];
          spec.system.d[j] = spec.system.b[perm[j]];
        }
      }
      const bool same = identically_distributed(spec);
      const auto scan = scan_equation_residual(spec);
      agree_exact += scan.exact_zero == same;
      agree_float += (scan.max_abs < 1e-9) == same;
      equal += same;
      if (same) max_equal = std::max(max_equal, scan.max_abs);
    }
    out.check(g.name() + ": equality <=> exact zero residual on 100/100", agree_exact == 100);
    out.check(g.name() + ": equality <=> float residual < 1e-9 on 100/100", agree_float == 100);
    std::ostringstream s;
    s << g.name() << ": " << equal << " identically distributed, max float residual among them " << max_equal;
    out.info.push_back(s.str());
  }
}

void elimination_soundness(Outcome& out) {
  const Group y(0, {7, 7});
  std::mt19937_64 rng(0xe1171);
  std::size_t cascade_ok = 0, plant_ok = 0, relabel_ok = 0, formula_ok = 0, derivations = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const auto n = static_cast<std::size_t>(uniform_int(rng, 1, 3));
    const std::optional<unsigned> l =
        trial % 2 ? std::optional<unsigned>(static_cast<unsigned>(uniform_int(rng, 0, 2))) : std::nullopt;
    const auto eq = random_equation(rng, m, n, l);
    const auto d = eliminate(eq);
    const auto values = random_shifts(y, rng, m, n);

    // (a) random tuples
    FunctionTuple<Rational> fns;
    for (std::size_t j = 0; j < m; ++j) fns.phi.push_back(random_function<Rational>(49, rng));
    for (std::size_t j = 0; j < n; ++j) fns.psi.push_back(random_function<Rational>(49, rng));
    if (l) fns.q = random_function<Rational>(49 * 49, rng);
    bool cascade = true;
    for (const auto& f : d.per_function) {
      const auto composed = evaluate_equation(y, f.result, fns, values);
      cascade = cascade && cascade_residual(y, eq, f, fns, values) == composed;
      if (!l) cascade = cascade && derived_residual(y, f, fns, values) == composed;
      ++derivations;
    }
    cascade_ok += cascade;

    // (b) quadratic plants with q = lhs - rhs, and relabeling plants with q = 0
    auto with_q = eq;
    with_q.q_degree = 2;
    FunctionTuple<Mod7> quad;
    for (std::size_t j = 0; j < m; ++j) quad.phi.push_back(random_quadratic(y, rng));
    for (std::size_t j = 0; j < n; ++j) quad.psi.push_back(random_quadratic(y, rng));
    quad.q = planted_q(y, with_q, quad);
    bool planted = all_zero(evaluate_equation(y, with_q.initial(), quad, values));
    for (const auto& f : eliminate(with_q).per_function) planted = planted && all_zero(derived_residual(y, f, quad, values));
    plant_ok += planted;

    FunctionalEquation relabeled{eq.phi, {}, std::nullopt};
    std::vector<std::size_t> perm = first_n(m);
    std::shuffle(perm.begin(), perm.end(), rng);
    FunctionTuple<Rational> same;
    for (std::size_t j = 0; j < m; ++j) same.phi.push_back(random_function<Rational>(49, rng));
    for (std::size_t t = 0; t < m; ++t) {
      relabeled.psi.push_back(eq.phi[perm[t]]);
      same.psi.push_back(same.phi[perm[t]]);
    }
    const auto relabel_values = random_shifts(y, rng, m, m);
    bool relabel = all_zero(evaluate_equation(y, relabeled.initial(), same, relabel_values));
    for (const auto& f : eliminate(relabeled).per_function) {
      relabel = relabel && all_zero(derived_residual(y, f, same, relabel_values));
    }
    relabel_ok += relabel;

    // (c) factor coefficients
    bool formula = true;
    for (std::size_t j = 0; j < m; ++j) {
      const auto [a, b] = eq.phi[j];
      std::vector<DeltaFactor> expected;
      for (std::size_t t = n; t-- > 0;) expected.push_back({single(a * eq.psi[t].second - b * eq.psi[t].first, k_sym(t)), 1});
      for (std::size_t i = m; i-- > 0;) {
        if (i != j) expected.push_back({single(a * eq.phi[i].second - b * eq.phi[i].first, l_sym(i)), 1});
      }
      if (l) expected.push_back({single(a, kH) + single(b, kKPoly), *l + 1});
      formula = formula && d.per_function[j].final_term.ops == expected;
    }
    formula_ok += formula;
  }
  out.check("(a) cascade residual == composed-operator residual on 50/50 systems (" + std::to_string(derivations) +
                " derivations)",
            cascade_ok == 50);
  out.check("(b) planted quadratic solutions give derived residual 0 on 50/50", plant_ok == 50);
  out.check("(b) planted relabeling solutions give derived residual 0 on 50/50", relabel_ok == 50);
  out.check("(c) factor coefficients match the closed formulas on 50/50", formula_ok == 50);
}

void reduction_postconditions(Outcome& out) {
  std::mt19937_64 rng(0x5ed0c);
  for (const Group& g : {Group::cyclic(5), Group::lattice(1)}) {
    std::size_t found = 0, determinants = 0, brackets = 0;
    for (std::size_t attempt = 0; attempt < 1000000 && found < 1000; ++attempt) {
      const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 4));
      const auto s = random_system(rng, n, -4, 4);
      bool right_present = true;
      for (std::size_t j = 0; j < n; ++j) right_present = right_present && (admissible(g, s.c[j]) || admissible(g, s.d[j]));
      if (!right_present) continue;
      const auto r = reduce_coefficients(s, g);
      if (r.outcome != ReducedSystem::Outcome::Case1) continue;
      ++found;
      determinants += r.determinants_hold;
      brackets += r.brackets_hold;
    }
    out.check(g.name() + ": 1000 systems sampled (" + std::to_string(found) + ")", found == 1000);
    out.check(g.name() + ": A_i D_j - B_i C_j nonzero on " + std::to_string(determinants) + "/1000", determinants == 1000);
    out.check(g.name() + ": A_i B_j - B_i A_j nonzero on " + std::to_string(brackets) + "/1000", brackets == 1000);
  }
}

void consistency_sweep(Outcome& out) {
  const SweepConfig config;
  std::size_t degenerate_satisfying = 0, degenerate_verified = 0;
  const auto summary = run_sweep(config, [&](const SweepRecord& r) {
    if (r.closed_form && *r.closed_form) {
      ++degenerate_satisfying;
      degenerate_verified += r.verdict.identically_distributed;
    }
  });
  out.check("instances >= 2000 (" + std::to_string(summary.instances) + ")", summary.instances >= 2000);
  out.check("zero inconsistent verdicts (" + std::to_string(summary.inconsistent) + ")", summary.inconsistent == 0);
  out.check("zero falsifying candidates (" + std::to_string(summary.falsifying_candidates) + ")",
            summary.falsifying_candidates == 0);
  out.check("degenerate tuples satisfying both constraints verify identically distributed (" +
                std::to_string(degenerate_verified) + "/" + std::to_string(degenerate_satisfying) + ")",
            degenerate_satisfying > 0 && degenerate_verified == degenerate_satisfying);
  out.check("degenerate closed form matches on every degenerate tuple", summary.degenerate_closed_form_mismatches == 0);
  std::ostringstream s;
  s << "seed " << config.seed << ", unverifiable " << summary.unverifiable << ", counterexample regime "
    << summary.counterexample_regime << ", degenerate tuples " << summary.degenerate_tuples;
  out.info.push_back(s.str());
}

void polynomial_collapse_check(Outcome& out) {
  bool constants = true;
  for (std::int64_t n = 2; n <= 8; ++n) {
    const Group g = Group::cyclic(n);
    for (unsigned l = 1; l <= 3; ++l) {
      constants = constants && polynomial_space_dimension(g, l) == 1 && polynomial_space_dimension(g, l, true) == 0 &&
                  is_polynomial(g, DualFunction<Rational>(static_cast<std::size_t>(n), Rational(3)), l);
    }
  }
  out.check("Z(n), n = 2..8, l = 1..3: solution space is exactly the constants", constants);

  std::mt19937_64 rng(0xc011a);
  std::size_t agree = 0;
  const std::vector<Group> groups{Group::cyclic(3), Group::cyclic(5), Group(0, {2, 2}), Group::cyclic(4)};
  for (int trial = 0; trial < 50; ++trial) {
    const Group& g = groups[trial % groups.size()];
    auto spec = random_instance(g, rng, 2);
    if (trial % 3 == 0) {
      spec.system.c = spec.system.a;
      spec.system.d = spec.system.b;
    }
    const auto independent = verify_instance(spec);
    spec.mode = Mode::QIndependent;
    const auto qv = q_mode_check(spec);
    agree += qv.q_collapse && qv.q_collapse->collapses && qv.status == independent.status &&
             qv.hypotheses_hold == independent.hypotheses_hold && qv.condition_set == independent.condition_set &&
             qv.conclusion_holds == independent.conclusion_holds &&
             qv.identically_distributed == independent.identically_distributed;
  }
  out.check("Q-independent verdicts equal independent verdicts on " + std::to_string(agree) + "/50", agree == 50);
}

void special_cases(Outcome& out) {
  const auto heyde = special_case_derivations(SpecialCase::X3Heyde);
  out.check("Z(3): v = -u yields " + heyde.result,
            heyde.substitution == "v = -u" && heyde.result == "prod_{j=1..m} hat_mu_j(2 a_j u) = 1" &&
                heyde.substitution_verified);
  out.check("Z(3): " + std::to_string(heyde.tuples_satisfying) + " of " + std::to_string(heyde.tuples_checked) +
                " tuples satisfy the identity, all degenerate",
            heyde.tuples_checked > 0 && heyde.tuples_satisfying > 0 && heyde.all_forced_degenerate);
  const auto darmois = special_case_derivations(SpecialCase::X2Darmois);
  out.check("Z(2): v = u yields " + darmois.result,
            darmois.substitution == "v = u" && darmois.result == "prod_{j=1..n} hat_mu_j(u) = 1" &&
                darmois.substitution_verified);
  out.check("Z(2): " + std::to_string(darmois.tuples_satisfying) + " of " + std::to_string(darmois.tuples_checked) +
                " tuples satisfy the identity, all degenerate",
            darmois.tuples_checked > 0 && darmois.tuples_satisfying > 0 && darmois.all_forced_degenerate);
}

}  // namespace

int main() {
  run(1, "two-point law on Z(3), x0 = 1, m = 3/5", 1, two_point_law);
  run(2, "Haar counterexample on Z(2) (n = 3) and Z(3) (n = 4)", 1, haar_counterexample);
  run(3, "equality of laws iff vanishing residual on Z(4), Z(5), Z(2)xZ(6)", 30, laws_residual_equivalence);
  run(4, "elimination soundness on Z(7)^2", 60, elimination_soundness);
  run(5, "reduction postconditions over Z(5) and Z", 30, reduction_postconditions);
  run(6, "theorem consistency sweep", 300, consistency_sweep);
  run(7, "polynomial collapse and Q-independent verdicts", 60, polynomial_collapse_check);
  run(8, "special-case derivations", 30, special_cases);
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
