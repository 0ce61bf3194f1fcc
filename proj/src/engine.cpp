#include "abelian/engine.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "abelian/errors.hpp"

namespace abelian {

std::string to_string(Verdict::Status status) {
  switch (status) {
    case Verdict::Status::Consistent:
      return "consistent";
    case Verdict::Status::Inconsistent:
      return "inconsistent";
    case Verdict::Status::Unverifiable:
      return "unverifiable";
  }
  return "unverifiable";
}

int exit_code(Verdict::Status status) {
  switch (status) {
    case Verdict::Status::Consistent:
      return 0;
    case Verdict::Status::Inconsistent:
      return 2;
    case Verdict::Status::Unverifiable:
      return 3;
  }
  return 3;
}

namespace {

std::string index_list(const std::vector<std::size_t>& indices) {
  std::string out;
  for (const auto i : indices) {
    if (!out.empty()) out += ", ";
    out += std::to_string(i + 1);
  }
  return "{" + out + "}";
}

}  // namespace

Verdict verify_instance(const InstanceSpec& input, const VerifyOptions& options) {
  input.validate();
  Verdict v;
  v.mode = input.mode;
  v.group = input.group;
  v.group_class = classify_group(input.group);

  PrunedInstance pruned = prune_null_variables(input);
  if (pruned.spec.system.size() == 0) {
    pruned = PrunedInstance{input, {}};
  } else if (!pruned.dropped.empty()) {
    v.dropped_variables = pruned.dropped;
    v.notes.push_back("variables " + index_list(pruned.dropped) +
                      " have all four coefficients zero and were dropped before the condition check");
  }
  const InstanceSpec& spec = pruned.spec;
  std::vector<std::size_t> original;
  for (std::size_t j = 0, k = 0; j < input.system.size(); ++j) {
    if (k < pruned.dropped.size() && pruned.dropped[k] == j) {
      ++k;
      continue;
    }
    original.push_back(j);
  }

  v.identically_distributed = identically_distributed(spec);
  bool all_nonvanishing = true;
  for (const auto& mu : input.dists) {
    v.nonvanishing.push_back(nonvanishing(mu, options.torus_grid));
    all_nonvanishing = all_nonvanishing && v.nonvanishing.back().nonvanishing;
    v.nonvanishing_exhaustive = v.nonvanishing_exhaustive && v.nonvanishing.back().exhaustive;
  }

  for (const auto i : condition_indices(spec.system, spec.group)) {
    v.condition_set.push_back(original[i]);
    v.conclusion_checks.push_back(classify(input.dists[original[i]]));
    if (v.conclusion_checks.back().kind != Classification::Kind::Degenerate) v.conclusion_holds = false;
  }

  bool nonvanishing_required = true;
  switch (v.group_class.kind) {
    case GroupClass::Kind::TorsionFreeLattice:
      if (options.lattice_without_nonvanishing) {
        v.theorem = "torsion_free_discrete";
        nonvanishing_required = false;
      } else {
        v.theorem = "torsion_free";
      }
      v.theorem_asserted = true;
      break;
    case GroupClass::Kind::PGroup:
      v.theorem = "p_group";
      v.theorem_asserted = v.group_class.p != 2;
      break;
    case GroupClass::Kind::Other:
      break;
  }

  v.hypotheses_hold = v.identically_distributed && (!nonvanishing_required || all_nonvanishing);

  if (!v.identically_distributed) {
    v.notes.push_back("hypotheses fail: (L1, L2) and (L3, L4) are not identically distributed");
  } else if (nonvanishing_required && !all_nonvanishing) {
    for (std::size_t j = 0; j < v.nonvanishing.size(); ++j) {
      if (!v.nonvanishing[j].nonvanishing) {
        v.notes.push_back("hypotheses fail: the characteristic function of distribution " + std::to_string(j + 1) +
                          " vanishes");
      }
    }
  }

  if (v.theorem_asserted && v.hypotheses_hold && !v.conclusion_holds) {
    const bool heuristic = nonvanishing_required && !v.nonvanishing_exhaustive;
    if (heuristic) {
      v.status = Verdict::Status::Unverifiable;
      v.notes.push_back(
          "conclusion fails but nonvanishing was only checked on a torus grid; the hypotheses cannot be confirmed");
    } else {
      v.consistent = false;
      v.status = Verdict::Status::Inconsistent;
      v.notes.push_back("conclusion fails on a condition-set index while every hypothesis holds exactly");
    }
  }

  if (v.group_class.kind == GroupClass::Kind::PGroup && v.group_class.p == 2) {
    v.notes.push_back(std::string("p = 2: the conclusion is not asserted here; on this instance it ") +
                      (v.hypotheses_hold ? (v.conclusion_holds ? "holds" : "fails") : "is not tested (hypotheses fail)"));
  }
  if (v.group_class.kind == GroupClass::Kind::Other) {
    v.notes.push_back("group " + v.group.name() + " is outside the covered families; no conclusion is asserted");
  }

  if (v.identically_distributed && all_nonvanishing) {
    auto nondegenerate = [&](std::size_t j) { return classify(input.dists[j]).kind != Classification::Kind::Degenerate; };
    std::vector<std::size_t> failing;
    if (!v.theorem_asserted) {
      for (const auto j : v.condition_set) {
        if (nondegenerate(j)) failing.push_back(j);
      }
      if (!failing.empty()) {
        v.counterexample_regime = true;
        v.notes.push_back("counterexample regime: condition-set indices " + index_list(failing) +
                          " carry nondegenerate distributions");
      }
    } else if (spec.group.is_finite()) {
      // Indices whose determinants are nonzero integers that the group annihilates.
      std::vector<std::size_t> lost;
      const auto over_z = condition_indices(spec.system, Group::lattice(1));
      for (const auto i : over_z) {
        const std::size_t j = original[i];
        if (std::find(v.condition_set.begin(), v.condition_set.end(), j) == v.condition_set.end() && nondegenerate(j)) {
          lost.push_back(j);
        }
      }
      if (!lost.empty()) {
        v.counterexample_regime = true;
        v.notes.push_back("counterexample regime: indices " + index_list(lost) +
                          " satisfy the condition over the integers but every such determinant is annihilated on " +
                          v.group.name() + "; their distributions are nondegenerate and the conclusion does not apply");
      }
    }
  }
  return v;
}

FormSystem heyde_specialize(const std::vector<Integer>& a, const std::vector<Integer>& b) {
  FormSystem s{a, b, a, {}};
  for (const auto& x : b) s.d.push_back(-x);
  s.validate();
  return s;
}

InstanceSpec darmois_specialize(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                const std::vector<Pmf>& dists) {
  if (a.size() != b.size() || a.size() != dists.size() || a.empty()) {
    throw SchemaError("darmois_specialize: a, b and dists must have the same positive length");
  }
  const std::size_t n = a.size();
  InstanceSpec spec{dists.front().group(), {}, {}, Mode::Independent};
  auto& s = spec.system;
  for (std::size_t j = 0; j < 2 * n; ++j) {
    const bool first = j < n;
    s.a.push_back(first ? a[j] : Integer(0));
    s.b.push_back(first ? b[j] : Integer(0));
    s.c.push_back(first ? a[j] : Integer(0));
    s.d.push_back(first ? Integer(0) : b[j - n]);
    spec.dists.push_back(dists[j % n]);
  }
  spec.validate();
  return spec;
}

std::vector<std::size_t> darmois_condition(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                           const Group& group) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    if (admissible(group, a[i] * b[i])) out.push_back(i);
  }
  return out;
}

PolynomialCollapse polynomial_collapse(const Group& group, const QModeOptions& options) {
  PolynomialCollapse out;
  Group y = group;
  if (!group.is_finite()) {
    std::vector<std::int64_t> orders(group.lattice_rank(), options.torus_check_order);
    for (const auto f : group.invariant_factors()) orders.push_back(f);
    y = Group::from_cyclic(0, orders).group;
    out.exhaustive = false;
  }
  const Group y2 = square(y);
  out.check_group = y2.name();
  for (unsigned l = 0; l <= options.max_degree; ++l) {
    out.degrees.push_back(l);
    out.dimensions.push_back(polynomial_space_dimension(y2, l, true));
    out.collapses = out.collapses && out.dimensions.back() == 0;
  }
  return out;
}

Verdict q_mode_check(const InstanceSpec& spec, const QModeOptions& options) {
  PolynomialCollapse collapse = polynomial_collapse(spec.group, options);
  Verdict v = verify_instance(spec, options.verify);
  v.mode = Mode::QIndependent;
  std::ostringstream note;
  if (collapse.collapses) {
    note << "every polynomial q of degree <= " << options.max_degree << " with q(0, 0) = 0 on " << collapse.check_group
         << " is zero; Q-independence reduces to independence";
    if (!collapse.exhaustive) note << " (checked on a finite subgroup of the torus)";
  } else {
    note << "nonzero polynomials with q(0, 0) = 0 exist on " << collapse.check_group
         << "; the reduction to independence is not established";
  }
  v.notes.push_back(note.str());
  v.q_collapse = std::move(collapse);
  return v;
}

// ---------------------------------------------------------------------------

std::vector<Pmf> small_denominator_pmfs(const Group& group, std::int64_t max_denominator) {
  if (!group.is_finite()) throw PreconditionError("small_denominator_pmfs needs a finite group");
  const auto elements = group.torsion_elements();
  const std::size_t k = elements.size();
  std::set<std::vector<Rational>> seen;
  std::vector<Pmf> out;
  for (std::int64_t q = 1; q <= max_denominator; ++q) {
    std::vector<std::int64_t> parts(k, 0);
    // Enumerate compositions of q into k nonnegative parts.
    auto emit = [&]() {
      std::vector<Rational> w;
      for (const auto p : parts) w.push_back(make_rational(p, q));
      if (!seen.insert(w).second) return;
      std::vector<std::pair<GroupElement, Rational>> atoms;
      for (std::size_t i = 0; i < k; ++i) atoms.emplace_back(elements[i], w[i]);
      out.emplace_back(group, std::move(atoms));
    };
    std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t pos, std::int64_t left) {
      if (pos + 1 == k) {
        parts[pos] = left;
        emit();
        return;
      }
      for (std::int64_t x = 0; x <= left; ++x) {
        parts[pos] = x;
        rec(pos + 1, left - x);
      }
    };
    rec(0, q);
  }
  return out;
}

namespace {

struct SymbolicSetup {
  std::string kind, family, substitution;
  std::int64_t p;
  Integer s;  // v = s u
  std::vector<FactorBlock> lhs, rhs;
};

std::vector<FactorBlock> substitute(const std::vector<FactorBlock>& blocks, const Integer& s, std::int64_t p) {
  std::vector<FactorBlock> out;
  for (const auto& b : blocks) {
    const std::int64_t mult = mod_floor(Integer(b.mult_u + s * b.mult_v), p);
    if (mult == 0) continue;
    FactorBlock r{b.range, b.coefficient, mult, 0};
    if (!out.empty()) {
      auto& prev = out.back();
      const auto dots = prev.range.find("..");
      const auto next_dots = r.range.find("..");
      const std::string prev_hi = prev.range.substr(dots + 2);
      const std::string next_lo = r.range.substr(0, next_dots);
      if (prev.coefficient == r.coefficient && prev.mult_u == r.mult_u && next_lo == prev_hi + "+1") {
        prev.range = prev.range.substr(0, dots) + ".." + r.range.substr(next_dots + 2);
        continue;
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string factor_arg(const FactorBlock& b, const std::string& var) {
  std::string out;
  if (b.mult_u != 1) out += to_string(b.mult_u) + " ";
  if (b.coefficient != "1") out += b.coefficient + " ";
  return out + var;
}

std::string linear_string(const Integer& mu, const Integer& mv) {
  std::string out;
  auto add = [&](const Integer& m, const char* var) {
    if (m == 0) return;
    const Integer mag = abs(m);
    const std::string t = (mag == 1 ? "" : to_string(mag) + " ") + var;
    if (out.empty()) {
      out = m < 0 ? "-" + t : t;
    } else {
      out += m < 0 ? " - " + t : " + " + t;
    }
  };
  add(mu, "u");
  add(mv, "v");
  return out.empty() ? "0" : out;
}

std::string product_string(const std::vector<FactorBlock>& blocks, bool two_vars) {
  if (blocks.empty()) return "1";
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += " * ";
    std::string arg;
    if (two_vars) {
      const std::string inner = linear_string(b.mult_u, b.mult_v);
      if (b.coefficient == "1") {
        arg = inner;
      } else if (inner.find(' ') == std::string::npos) {
        arg = b.coefficient + " " + inner;
      } else {
        arg = b.coefficient + "(" + inner + ")";
      }
    } else {
      arg = factor_arg(b, "u");
    }
    out += "prod_{j=" + b.range + "} hat_mu_j(" + arg + ")";
  }
  return out;
}

bool degenerate_all(const std::vector<const Pmf*>& tuple) {
  return std::all_of(tuple.begin(), tuple.end(),
                     [](const Pmf* mu) { return mu->support_size() == 1; });
}

}  // namespace

SpecialCaseReport special_case_derivations(SpecialCase kind, std::int64_t max_denominator) {
  SymbolicSetup setup;
  std::vector<Integer> check_coefficients;
  Group check_group;
  if (kind == SpecialCase::X3Heyde) {
    // a_i = -b_i for i <= m, a_j = b_j beyond, c_j = d_j throughout.
    setup = {"x3_heyde", "X = X_(3)", "v = -u", 3, -1,
             {{"1..m", "a_j", 1, -1}, {"m+1..n", "a_j", 1, 1}},
             {{"1..n", "c_j", 1, 1}}};
    check_group = Group::cyclic(3);
    check_coefficients = {2, 2};
  } else {
    // a_j = b_j = c_j = 1 for j <= k, d_j = 1 for j > k, zero elsewhere.
    setup = {"x2_darmois", "X = X_(2)", "v = u", 2, 1,
             {{"1..k", "1", 1, 1}},
             {{"1..k", "1", 1, 0}, {"k+1..n", "1", 0, 1}}};
    check_group = Group::cyclic(2);
    check_coefficients = {1, 1, 1};
  }

  SpecialCaseReport r;
  r.kind = setup.kind;
  r.group_family = setup.family;
  r.p = setup.p;
  r.lhs = setup.lhs;
  r.rhs = setup.rhs;
  r.substitution = setup.substitution;
  r.equation = product_string(r.lhs, true) + " = " + product_string(r.rhs, true);
  r.reduced_lhs = substitute(r.lhs, setup.s, setup.p);
  r.reduced_rhs = substitute(r.rhs, setup.s, setup.p);
  if (r.reduced_lhs.empty()) std::swap(r.reduced_lhs, r.reduced_rhs);
  r.result = product_string(r.reduced_lhs, false) + " = " + product_string(r.reduced_rhs, false);

  r.check_group = check_group.name();
  r.check_coefficients = check_coefficients;
  r.max_denominator = max_denominator;
  const auto pmfs = small_denominator_pmfs(check_group, max_denominator);
  r.distributions = pmfs.size();
  const auto dual = check_group.finite_dual();
  const Cyclotomic one = Cyclotomic::rational(1);

  // Tabulate hat_mu(c u) for every pmf and coefficient.
  std::vector<std::vector<std::vector<Cyclotomic>>> table(pmfs.size());
  for (std::size_t i = 0; i < pmfs.size(); ++i) {
    table[i].resize(check_coefficients.size());
    for (std::size_t j = 0; j < check_coefficients.size(); ++j) {
      for (const auto& u : dual) table[i][j].push_back(char_fn_exact(pmfs[i], check_group.dual_scale(check_coefficients[j], u)));
    }
  }
  const std::size_t t = check_coefficients.size();
  std::vector<std::size_t> idx(t, 0);
  while (true) {
    ++r.tuples_checked;
    bool satisfied = true;
    for (std::size_t k = 0; k < dual.size() && satisfied; ++k) {
      Cyclotomic prod = one;
      for (std::size_t j = 0; j < t; ++j) prod *= table[idx[j]][j][k];
      satisfied = prod == one;
    }
    if (satisfied) {
      ++r.tuples_satisfying;
      std::vector<const Pmf*> tuple;
      for (const auto i : idx) tuple.push_back(&pmfs[i]);
      if (!degenerate_all(tuple)) r.all_forced_degenerate = false;
    }
    std::size_t pos = 0;
    while (pos < t && ++idx[pos] == pmfs.size()) idx[pos++] = 0;
    if (pos == t) break;
  }

  // Concrete instantiation of the setup: the substituted characteristic
  // function equation equals the reduced product at every u.
  const Group& g = check_group;
  FormSystem sys;
  std::size_t split = 0;
  if (kind == SpecialCase::X3Heyde) {
    sys = {{1, 2, 1}, {-1, -2, 1}, {1, 2, 2}, {1, 2, 2}};
    split = 2;
  } else {
    sys = {{1, 1, 0, 0}, {1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}};
    split = 2;
  }
  std::vector<Pmf> dists;
  for (std::size_t j = 0; j < sys.size(); ++j) dists.push_back(pmfs[(7 * j + 3) % pmfs.size()]);
  for (const auto& u : dual) {
    const DualPoint v = g.dual_scale(setup.s, u);
    Cyclotomic lhs = one, rhs = one, reduced = one;
    for (std::size_t j = 0; j < sys.size(); ++j) {
      lhs *= char_fn_exact(dists[j], g.dual_add(g.dual_scale(sys.a[j], u), g.dual_scale(sys.b[j], v)));
      rhs *= char_fn_exact(dists[j], g.dual_add(g.dual_scale(sys.c[j], u), g.dual_scale(sys.d[j], v)));
    }
    if (kind == SpecialCase::X3Heyde) {
      for (std::size_t j = 0; j < split; ++j) reduced *= char_fn_exact(dists[j], g.dual_scale(2 * sys.a[j], u));
      r.substitution_verified = r.substitution_verified && lhs == reduced && rhs == one;
    } else {
      for (std::size_t j = 0; j < sys.size(); ++j) reduced *= char_fn_exact(dists[j], u);
      r.substitution_verified = r.substitution_verified && lhs == one && rhs == reduced;
    }
  }
  return r;
}

}  // namespace abelian
