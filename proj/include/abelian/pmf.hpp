#pragma once

// Exact finitely supported probability distributions on a Group.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelian/group.hpp"

namespace abelian {

class Pmf {
 public:
  using Atoms = std::map<GroupElement, Rational>;

  /// Validates membership, merges repeated atoms and drops zero weights.
  /// Throws SchemaError on negative weights or total mass != 1.
  Pmf(Group group, std::vector<std::pair<GroupElement, Rational>> atoms);

  static Pmf degenerate(const Group& group, const GroupElement& x);
  static Pmf haar(const Group& group, const Subgroup& k);
  /// Uniform on the whole (finite) torsion part.
  static Pmf haar(const Group& group);

  const Group& group() const { return group_; }
  const Atoms& atoms() const { return atoms_; }
  std::size_t support_size() const { return atoms_.size(); }
  /// Weight at x (zero off the support).
  Rational weight(const GroupElement& x) const;

  bool operator==(const Pmf& other) const { return group_ == other.group_ && atoms_ == other.atoms_; }

 private:
  struct Trusted {};
  Pmf(Group group, Atoms atoms, Trusted) : group_(std::move(group)), atoms_(std::move(atoms)) {}

  friend Pmf convolve(const Pmf&, const Pmf&);
  friend Pmf pushforward(const Integer&, const Pmf&);
  friend Pmf reflect(const Pmf&);
  friend Pmf translate(const Pmf&, const GroupElement&);

  Group group_;
  Atoms atoms_;
};

Pmf convolve(const Pmf& mu, const Pmf& nu);
/// Image of mu under x -> a x.
Pmf pushforward(const Integer& a, const Pmf& mu);
/// mu(-B).
Pmf reflect(const Pmf& mu);
/// mu * E_x.
Pmf translate(const Pmf& mu, const GroupElement& x);

struct Classification {
  enum class Kind { Degenerate, HaarShift, Other };

  Kind kind = Kind::Other;
  GroupElement point;               // atom for Degenerate, coset representative for HaarShift
  std::optional<Subgroup> subgroup; // K for HaarShift
};

std::string to_string(Classification::Kind kind);

/// Degenerate iff one atom; HaarShift iff uniform on a coset x + K, |K| > 1.
/// The coset representative reported is the least support element.
Classification classify(const Pmf& mu);

}  // namespace abelian
