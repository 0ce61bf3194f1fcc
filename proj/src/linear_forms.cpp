#include "abelian/linear_forms.hpp"

#include <algorithm>

#include "abelian/errors.hpp"

namespace abelian {

void FormSystem::validate() const {
  if (a.empty()) throw SchemaError("form system needs at least one variable");
  if (b.size() != a.size() || c.size() != a.size() || d.size() != a.size()) {
    throw SchemaError("coefficient rows a, b, c, d must have equal length");
  }
}

std::string to_string(Mode mode) { return mode == Mode::Independent ? "independent" : "q_independent"; }

void InstanceSpec::validate() const {
  system.validate();
  if (dists.size() != system.size()) {
    throw SchemaError("expected " + std::to_string(system.size()) + " distributions, got " +
                      std::to_string(dists.size()));
  }
  for (const auto& mu : dists) {
    if (!(mu.group() == group)) throw SchemaError("distribution lives on " + mu.group().name() + ", not " + group.name());
  }
}

Pmf JointPmf::first_marginal() const {
  std::vector<std::pair<GroupElement, Rational>> out;
  for (const auto& [xy, w] : atoms) out.emplace_back(xy.first, w);
  return Pmf(group, std::move(out));
}

Pmf JointPmf::second_marginal() const {
  std::vector<std::pair<GroupElement, Rational>> out;
  for (const auto& [xy, w] : atoms) out.emplace_back(xy.second, w);
  return Pmf(group, std::move(out));
}

JointPmf joint_pmf(const Group& group, std::span<const Integer> r1, std::span<const Integer> r2,
                   const std::vector<Pmf>& dists) {
  if (r1.size() != dists.size() || r2.size() != dists.size()) {
    throw PreconditionError("coefficient vectors and distribution list differ in length");
  }
  JointPmf joint{group, {}};
  joint.atoms[{group.zero(), group.zero()}] = 1;
  for (std::size_t j = 0; j < dists.size(); ++j) {
    if (!(dists[j].group() == group)) throw PreconditionError("distribution on a different group");
    std::map<std::pair<GroupElement, GroupElement>, Rational> image;
    for (const auto& [x, w] : dists[j].atoms()) image[{group.scale(r1[j], x), group.scale(r2[j], x)}] += w;
    std::map<std::pair<GroupElement, GroupElement>, Rational> next;
    for (const auto& [p, w] : joint.atoms) {
      for (const auto& [q, v] : image) next[{group.add(p.first, q.first), group.add(p.second, q.second)}] += w * v;
    }
    joint.atoms = std::move(next);
  }
  return joint;
}

Pmf linear_form_law(const Group& group, std::span<const Integer> r, const std::vector<Pmf>& dists) {
  if (r.size() != dists.size()) throw PreconditionError("coefficient vector and distribution list differ in length");
  Pmf law = Pmf::degenerate(group, group.zero());
  for (std::size_t j = 0; j < dists.size(); ++j) law = convolve(law, pushforward(r[j], dists[j]));
  return law;
}

bool identically_distributed(const InstanceSpec& spec) {
  spec.validate();
  const auto& s = spec.system;
  return joint_pmf(spec.group, s.a, s.b, spec.dists) == joint_pmf(spec.group, s.c, s.d, spec.dists);
}

namespace {

DualPoint combine(const Group& g, const Integer& x, const DualPoint& u, const Integer& y, const DualPoint& v) {
  return g.dual_add(g.dual_scale(x, u), g.dual_scale(y, v));
}

}  // namespace

Cyclotomic equation_residual_exact(const InstanceSpec& spec, const DualPoint& u, const DualPoint& v) {
  const auto& s = spec.system;
  const Group& g = spec.group;
  Cyclotomic lhs = Cyclotomic::rational(1);
  Cyclotomic rhs = Cyclotomic::rational(1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    lhs *= char_fn_exact(spec.dists[j], combine(g, s.a[j], u, s.b[j], v));
    rhs *= char_fn_exact(spec.dists[j], combine(g, s.c[j], u, s.d[j], v));
  }
  return lhs - rhs;
}

std::complex<double> equation_residual(const InstanceSpec& spec, const DualPoint& u, const DualPoint& v) {
  const auto& s = spec.system;
  const Group& g = spec.group;
  std::complex<double> lhs = 1.0;
  std::complex<double> rhs = 1.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    lhs *= char_fn(spec.dists[j], combine(g, s.a[j], u, s.b[j], v));
    rhs *= char_fn(spec.dists[j], combine(g, s.c[j], u, s.d[j], v));
  }
  return lhs - rhs;
}

ResidualScan scan_equation_residual(const InstanceSpec& spec, std::int64_t resolution) {
  spec.validate();
  ResidualScan scan;
  scan.exhaustive = spec.group.is_finite();
  const auto points = dual_grid(spec.group, resolution);
  for (const auto& u : points) {
    for (const auto& v : points) {
      ++scan.pairs;
      if (scan.exact_zero && !equation_residual_exact(spec, u, v).is_zero()) scan.exact_zero = false;
      scan.max_abs = std::max(scan.max_abs, std::abs(equation_residual(spec, u, v)));
    }
  }
  return scan;
}

std::vector<std::size_t> condition_indices(const FormSystem& system, const Group& group) {
  system.validate();
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < system.size(); ++i) {
    bool ok = true;
    for (std::size_t j = 0; j < system.size() && ok; ++j) {
      ok = admissible(group, system.a[i] * system.d[j] - system.b[i] * system.c[j]);
    }
    if (ok) out.push_back(i);
  }
  return out;
}

PrunedInstance prune_null_variables(const InstanceSpec& spec) {
  spec.validate();
  PrunedInstance out{InstanceSpec{spec.group, {}, {}, spec.mode}, {}};
  const auto& s = spec.system;
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (s.a[j] == 0 && s.b[j] == 0 && s.c[j] == 0 && s.d[j] == 0) {
      out.dropped.push_back(j);
      continue;
    }
    out.spec.system.a.push_back(s.a[j]);
    out.spec.system.b.push_back(s.b[j]);
    out.spec.system.c.push_back(s.c[j]);
    out.spec.system.d.push_back(s.d[j]);
    out.spec.dists.push_back(spec.dists[j]);
  }
  return out;
}

}  // namespace abelian
