#include "abelian/counterexamples.hpp"

#include "abelian/errors.hpp"

namespace abelian {

Certificate certify(const InstanceSpec& spec) {
  spec.validate();
  Certificate c;
  const JointPmf first = joint_pmf(spec.group, spec.system.a, spec.system.b, spec.dists);
  const JointPmf second = joint_pmf(spec.group, spec.system.c, spec.system.d, spec.dists);
  c.identically_distributed = first == second;
  c.pairs_compared = first.atoms.size() + second.atoms.size();
  c.condition_set = condition_indices(spec.system, spec.group);
  for (const auto& mu : spec.dists) {
    c.classifications.push_back(classify(mu));
    c.nonvanishing.push_back(nonvanishing(mu));
  }
  return c;
}

Construction prop2_construction(const Group& group, const GroupElement& x0, const Rational& m, std::size_t n) {
  group.require(x0);
  const std::int64_t p = group.order_of(x0);
  if (p == 0 || !is_prime(p)) {
    throw PreconditionError("prop2_construction: x0 must have prime order, got order " +
                            (p == 0 ? std::string("infinity") : std::to_string(p)));
  }
  if (!(m > Rational(1, 2) && m < 1)) throw PreconditionError("prop2_construction: m must lie in (1/2, 1)");
  if (n < 2) throw PreconditionError("prop2_construction: n must be at least 2");

  const Pmf mu(group, {{group.zero(), m}, {x0, Rational(1 - m)}});
  InstanceSpec spec{group, {}, std::vector<Pmf>(n, mu), Mode::Independent};
  spec.system.a.assign(n, 1);
  spec.system.b.assign(n, 1);
  spec.system.c.assign(n, 1);
  spec.system.d.assign(n, Integer(1 - p));
  Construction out{spec, certify(spec)};
  out.certificate.notes.push_back("x0 has order " + std::to_string(p) + "; d_j = 1 - p = " + std::to_string(1 - p));
  if (out.certificate.condition_set.empty()) {
    out.certificate.notes.push_back("every determinant a_i d_j - b_i c_j equals -" + std::to_string(p) +
                                    ", which is not admissible on " + group.name() + "; the condition set is empty");
  }
  return out;
}

Construction haar_construction(const Group& group, std::size_t n, const std::vector<Pmf>& leading) {
  if (!(group == Group::cyclic(2) || group == Group::cyclic(3))) {
    throw PreconditionError("haar_construction: group must be Z(2) or Z(3), got " + group.name());
  }
  if (n < 3) throw PreconditionError("haar_construction: n must be at least 3");
  if (leading.size() != n - 2) {
    throw SchemaError("haar_construction: expected " + std::to_string(n - 2) + " leading distributions");
  }
  InstanceSpec spec{group, {}, leading, Mode::Independent};
  for (const auto& mu : leading) {
    if (!(mu.group() == group)) throw SchemaError("haar_construction: leading distribution on the wrong group");
  }
  spec.dists.push_back(Pmf::haar(group));
  spec.dists.push_back(Pmf::haar(group));
  auto& s = spec.system;
  for (std::size_t j = 0; j < n; ++j) {
    s.a.push_back(j == n - 1 ? 0 : 1);
    s.b.push_back(j == n - 2 ? 0 : 1);
    s.c.push_back(j == n - 1 ? 0 : 1);
    s.d.push_back(j == n - 1 ? 1 : 0);
  }
  Construction out{spec, certify(spec)};
  for (std::size_t j = 0; j < leading.size(); ++j) {
    const auto kind = out.certificate.classifications[j].kind;
    if (kind == Classification::Kind::Other) {
      out.certificate.notes.push_back("distribution " + std::to_string(j + 1) +
                                      " is not a shifted Haar distribution of a subgroup");
    }
  }
  return out;
}

Construction identity_construction(const Pmf& mu) {
  InstanceSpec spec{mu.group(), {{1, 1}, {1, -1}, {1, 1}, {-1, 1}}, {mu, mu}, Mode::Independent};
  return {spec, certify(spec)};
}

}  // namespace abelian
