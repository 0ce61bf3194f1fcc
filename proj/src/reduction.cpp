#include "abelian/reduction.hpp"

#include "abelian/errors.hpp"

namespace abelian {

std::string to_string(GroupClass::Kind kind) {
  switch (kind) {
    case GroupClass::Kind::TorsionFreeLattice:
      return "torsion_free_lattice";
    case GroupClass::Kind::PGroup:
      return "p_group";
    case GroupClass::Kind::Other:
      return "other";
  }
  return "other";
}

GroupClass classify_group(const Group& group) {
  const auto& f = group.invariant_factors();
  if (group.lattice_rank() > 0 && f.empty()) return {GroupClass::Kind::TorsionFreeLattice, 0};
  if (group.lattice_rank() == 0 && !f.empty() && f.front() == f.back() && is_prime(f.front())) {
    return {GroupClass::Kind::PGroup, f.front()};
  }
  return {GroupClass::Kind::Other, 0};
}

std::string to_string(ReducedRow::Origin origin) {
  switch (origin) {
    case ReducedRow::Origin::RatioClass:
      return "ratio_class";
    case ReducedRow::Origin::OnlyA:
      return "only_a";
    case ReducedRow::Origin::OnlyB:
      return "only_b";
    case ReducedRow::Origin::Residual:
      return "residual";
  }
  return "residual";
}

std::string to_string(ReducedSystem::Outcome outcome) {
  switch (outcome) {
    case ReducedSystem::Outcome::Case1:
      return "case1";
    case ReducedSystem::Outcome::Case2:
      return "case2";
    case ReducedSystem::Outcome::Vacuous:
      return "vacuous";
  }
  return "vacuous";
}

namespace {

std::string row_label(const ReducedRow& row, std::size_t position) {
  switch (row.origin) {
    case ReducedRow::Origin::RatioClass:
      return "class" + std::to_string(position);
    case ReducedRow::Origin::OnlyA:
      return "unit_u";
    case ReducedRow::Origin::OnlyB:
      return "unit_v";
    case ReducedRow::Origin::Residual:
      return "x" + std::to_string(row.members.front() + 1);
  }
  return "?";
}

InequalityCheck make_check(const Group& g, std::string left, std::string right, Integer value) {
  InequalityCheck c{std::move(left), std::move(right), value, value != 0, admissible(g, value)};
  return c;
}

}  // namespace

ReducedSystem reduce_coefficients(const FormSystem& system, const Group& group) {
  system.validate();
  const GroupClass gc = classify_group(group);
  if (gc.kind == GroupClass::Kind::Other) {
    throw PreconditionError("coefficient reduction needs a torsion-free lattice or an elementary p-group, got " +
                            group.name());
  }
  auto adm = [&](const Integer& x) { return admissible(group, x); };
  const std::size_t n = system.size();
  const auto& a = system.a;
  const auto& b = system.b;
  const auto& c = system.c;
  const auto& d = system.d;

  ReducedSystem out;
  out.condition_set = condition_indices(system, group);
  const auto& s = out.condition_set;
  if (s.empty()) return out;

  bool any_bracket = false;
  for (std::size_t x = 0; x < s.size() && !any_bracket; ++x) {
    for (std::size_t y = x + 1; y < s.size() && !any_bracket; ++y) {
      any_bracket = adm(b[s[x]] * a[s[y]] - b[s[y]] * a[s[x]]);
    }
  }

  if (!any_bracket) {
    out.outcome = ReducedSystem::Outcome::Case2;
    const std::size_t i = s.front();
    out.lhs_collapses = true;
    for (std::size_t j = 0; j < n; ++j) {
      const Integer e = b[i] * c[j] - a[i] * d[j];
      out.collapse_coefficients.push_back(e);
      out.collapse_admissible.push_back(adm(e));
      if (adm(a[j] * b[i] - b[j] * a[i])) out.lhs_collapses = false;
    }
    return out;
  }

  out.outcome = ReducedSystem::Outcome::Case1;
  std::vector<std::vector<std::size_t>> classes;
  ReducedRow only_a{ReducedRow::Origin::OnlyA, 1, 0, {}};
  ReducedRow only_b{ReducedRow::Origin::OnlyB, 0, 1, {}};
  for (const auto i : s) {
    const bool ai = adm(a[i]);
    const bool bi = adm(b[i]);
    if (ai && !bi) {
      only_a.members.push_back(i);
    } else if (!ai && bi) {
      only_b.members.push_back(i);
    } else if (ai && bi) {
      bool placed = false;
      for (auto& cls : classes) {
        const std::size_t r = cls.front();
        if (!adm(a[i] * b[r] - a[r] * b[i])) {
          cls.push_back(i);
          placed = true;
          break;
        }
      }
      if (!placed) classes.push_back({i});
    }
  }
  for (const auto& cls : classes) {
    out.A *= b[cls.front()];
    out.B *= a[cls.front()];
  }
  for (const auto& cls : classes) {
    out.rows.push_back({ReducedRow::Origin::RatioClass, out.A / b[cls.front()], out.B / a[cls.front()], cls});
  }
  if (!only_a.members.empty()) out.rows.push_back(only_a);
  if (!only_b.members.empty()) out.rows.push_back(only_b);

  std::vector<bool> in_s(n, false);
  for (const auto i : s) in_s[i] = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (in_s[j]) continue;
    if (!adm(a[j]) && !adm(b[j])) {
      out.absent.push_back(j);
      continue;
    }
    out.residual.push_back({ReducedRow::Origin::Residual, a[j] * out.A, b[j] * out.B, {j}});
  }
  for (std::size_t j = 0; j < n; ++j) {
    out.C.push_back(c[j] * out.A);
    out.D.push_back(d[j] * out.B);
  }

  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const auto& row = out.rows[i];
    for (std::size_t j = 0; j < n; ++j) {
      auto check = make_check(group, row_label(row, i), "C" + std::to_string(j + 1) + "/D" + std::to_string(j + 1),
                              row.A * out.D[j] - row.B * out.C[j]);
      out.determinants_hold = out.determinants_hold && check.nonzero && check.admissible;
      out.determinant_checks.push_back(std::move(check));
    }
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i) {
    const auto& ri = out.rows[i];
    for (std::size_t j = i + 1; j < out.rows.size(); ++j) {
      const auto& rj = out.rows[j];
      auto check = make_check(group, row_label(ri, i), row_label(rj, j), ri.A * rj.B - ri.B * rj.A);
      out.brackets_hold = out.brackets_hold && check.nonzero && check.admissible;
      out.bracket_checks.push_back(std::move(check));
    }
    for (std::size_t j = 0; j < out.residual.size(); ++j) {
      const auto& rj = out.residual[j];
      auto check = make_check(group, row_label(ri, i), row_label(rj, j), ri.A * rj.B - ri.B * rj.A);
      out.brackets_hold = out.brackets_hold && check.nonzero && check.admissible;
      out.bracket_checks.push_back(std::move(check));
    }
  }
  return out;
}

}  // namespace abelian
