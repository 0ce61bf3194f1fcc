#include "abelian/pmf.hpp"

#include <algorithm>

#include "abelian/errors.hpp"

namespace abelian {

Pmf::Pmf(Group group, std::vector<std::pair<GroupElement, Rational>> atoms) : group_(std::move(group)) {
  Rational total = 0;
  for (auto& [x, w] : atoms) {
    if (!group_.contains(x)) throw SchemaError("atom does not belong to group " + group_.name());
    if (w < 0) throw SchemaError("negative weight " + to_string(w));
    total += w;
    if (w == 0) continue;
    atoms_[x] += w;
  }
  if (total != 1) throw SchemaError("weights sum to " + to_string(total) + ", expected 1");
}

Pmf Pmf::degenerate(const Group& group, const GroupElement& x) {
  group.require(x);
  return Pmf(group, Atoms{{x, Rational(1)}}, Trusted{});
}

Pmf Pmf::haar(const Group& group, const Subgroup& k) {
  Atoms atoms;
  const Rational w(1, static_cast<unsigned long>(k.order()));
  for (const auto& x : k.elements()) {
    group.require(x);
    atoms.emplace(x, w);
  }
  return Pmf(group, std::move(atoms), Trusted{});
}

Pmf Pmf::haar(const Group& group) { return haar(group, Subgroup::full_torsion(group)); }

Rational Pmf::weight(const GroupElement& x) const {
  const auto it = atoms_.find(x);
  return it == atoms_.end() ? Rational(0) : it->second;
}

Pmf convolve(const Pmf& mu, const Pmf& nu) {
  if (!(mu.group() == nu.group())) throw PreconditionError("convolution of distributions on different groups");
  const Group& g = mu.group();
  Pmf::Atoms out;
  for (const auto& [x, p] : mu.atoms()) {
    for (const auto& [y, q] : nu.atoms()) out[g.add(x, y)] += p * q;
  }
  return Pmf(g, std::move(out), Pmf::Trusted{});
}

Pmf pushforward(const Integer& a, const Pmf& mu) {
  const Group& g = mu.group();
  Pmf::Atoms out;
  for (const auto& [x, p] : mu.atoms()) out[g.scale(a, x)] += p;
  return Pmf(g, std::move(out), Pmf::Trusted{});
}

Pmf reflect(const Pmf& mu) {
  const Group& g = mu.group();
  Pmf::Atoms out;
  for (const auto& [x, p] : mu.atoms()) out.emplace(g.negate(x), p);
  return Pmf(g, std::move(out), Pmf::Trusted{});
}

Pmf translate(const Pmf& mu, const GroupElement& x) {
  const Group& g = mu.group();
  Pmf::Atoms out;
  for (const auto& [y, p] : mu.atoms()) out.emplace(g.add(y, x), p);
  return Pmf(g, std::move(out), Pmf::Trusted{});
}

std::string to_string(Classification::Kind kind) {
  switch (kind) {
    case Classification::Kind::Degenerate:
      return "degenerate";
    case Classification::Kind::HaarShift:
      return "haar_shift";
    case Classification::Kind::Other:
      return "other";
  }
  return "other";
}

Classification classify(const Pmf& mu) {
  const Group& g = mu.group();
  const auto& atoms = mu.atoms();
  const GroupElement& x0 = atoms.begin()->first;
  if (atoms.size() == 1) return {Classification::Kind::Degenerate, x0, std::nullopt};

  const Rational& w0 = atoms.begin()->second;
  std::vector<GroupElement> k;
  k.reserve(atoms.size());
  for (const auto& [x, w] : atoms) {
    if (w != w0) return {Classification::Kind::Other, g.zero(), std::nullopt};
    GroupElement d = g.subtract(x, x0);
    if (!std::all_of(d.lattice.begin(), d.lattice.end(), [](const Integer& c) { return c == 0; })) {
      return {Classification::Kind::Other, g.zero(), std::nullopt};
    }
    k.push_back(std::move(d));
  }
  std::sort(k.begin(), k.end());
  for (const auto& p : k) {
    for (const auto& q : k) {
      if (!std::binary_search(k.begin(), k.end(), g.add(p, q))) {
        return {Classification::Kind::Other, g.zero(), std::nullopt};
      }
    }
  }
  Subgroup sub = Subgroup::generated(g, k);
  return {Classification::Kind::HaarShift, x0, std::move(sub)};
}

}  // namespace abelian
