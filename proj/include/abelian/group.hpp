#pragma once

// Finitely generated abelian groups X = Z^d x Z(n_1) x ... x Z(n_k) in
// canonical invariant-factor form, their elements, the character pairing
// with the dual Y = T^d x Z(n_1) x ... x Z(n_k), and finite subgroups.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "abelian/numeric.hpp"

namespace abelian {

struct GroupElement {
  std::vector<Integer> lattice;
  std::vector<std::int64_t> torsion;

  bool operator==(const GroupElement& other) const = default;
};

bool operator<(const GroupElement& lhs, const GroupElement& rhs);

/// A character of X. The finite part is indexed by the same residue vectors
/// as X itself; torus coordinates are reduced fractions in [0, 1).
struct DualPoint {
  std::vector<std::int64_t> torsion;
  std::vector<Rational> lattice;

  bool operator==(const DualPoint& other) const = default;
};

bool operator<(const DualPoint& lhs, const DualPoint& rhs);

class Group;

struct GroupNormalization;

class Group {
 public:
  /// The trivial group.
  Group() = default;

  /// Canonical constructor: factors must already form a divisibility chain
  /// with every entry >= 2. Use `from_cyclic` for arbitrary decompositions.
  Group(std::size_t lattice_rank, std::vector<std::int64_t> invariant_factors);

  static Group cyclic(std::int64_t order);
  static Group lattice(std::size_t rank);

  /// Normalizes Z^d x Z(m_1) x ... x Z(m_r) for arbitrary positive m_i
  /// (1 allowed, any order) and reports where each original generator lands.
  static GroupNormalization from_cyclic(std::size_t lattice_rank, std::span<const std::int64_t> orders);

  std::size_t lattice_rank() const { return lattice_rank_; }
  const std::vector<std::int64_t>& invariant_factors() const { return factors_; }
  std::size_t torsion_rank() const { return factors_.size(); }

  bool is_finite() const { return lattice_rank_ == 0; }
  bool is_trivial() const { return lattice_rank_ == 0 && factors_.empty(); }
  bool is_torsion_free() const { return factors_.empty(); }

  /// Order of the torsion subgroup.
  std::int64_t torsion_order() const;
  /// Exponent of the torsion subgroup (1 when torsion-free).
  std::int64_t torsion_exponent() const;

  GroupElement zero() const;
  /// Builds an element, reducing torsion coordinates; throws on shape mismatch.
  GroupElement element(std::vector<Integer> lattice, std::vector<std::int64_t> torsion) const;
  /// Convenience for cyclic groups and Z.
  GroupElement element(std::int64_t value) const;

  bool contains(const GroupElement& g) const;
  void require(const GroupElement& g) const;

  GroupElement add(const GroupElement& g, const GroupElement& h) const;
  GroupElement subtract(const GroupElement& g, const GroupElement& h) const;
  GroupElement negate(const GroupElement& g) const;
  GroupElement scale(const Integer& a, const GroupElement& g) const;
  bool is_zero(const GroupElement& g) const;

  /// Order of g; 0 when g has a nonzero lattice part (infinite order).
  std::int64_t order_of(const GroupElement& g) const;

  /// Mixed-radix indexing of the torsion part, 0 <= index < torsion_order().
  std::int64_t torsion_index(std::span<const std::int64_t> torsion) const;
  std::vector<std::int64_t> torsion_at(std::int64_t index) const;
  std::vector<GroupElement> torsion_elements() const;

  DualPoint dual_zero() const;
  DualPoint dual_point(std::vector<std::int64_t> torsion, std::vector<Rational> lattice = {}) const;
  bool contains(const DualPoint& y) const;
  void require(const DualPoint& y) const;
  DualPoint dual_add(const DualPoint& y, const DualPoint& z) const;
  DualPoint dual_negate(const DualPoint& y) const;
  DualPoint dual_scale(const Integer& a, const DualPoint& y) const;
  /// Dual points of the finite part, torus coordinates zero.
  std::vector<DualPoint> finite_dual() const;

  /// Phase t in [0,1) with (x, y) = exp(2 pi i t).
  Rational pairing_phase(const GroupElement& x, const DualPoint& y) const;
  std::complex<double> pairing(const GroupElement& x, const DualPoint& y) const;

  std::string name() const;

  bool operator==(const Group& other) const = default;

 private:
  std::size_t lattice_rank_ = 0;
  std::vector<std::int64_t> factors_;
};

struct GroupNormalization {
  Group group;
  std::vector<GroupElement> generator_images;  // image of each input generator

  /// Image of the element with the given coordinates in the input decomposition.
  GroupElement map(std::span<const Integer> lattice, std::span<const Integer> torsion) const;
};

/// True iff x -> a x is not the zero map on G.
bool admissible(const Group& group, const Integer& a);

/// A finite subgroup of the torsion part (all elements have zero lattice part).
class Subgroup {
 public:
  /// Closure of the given generators. Generators already in the span of earlier ones are dropped.
  static Subgroup generated(const Group& group, std::vector<GroupElement> generators);
  static Subgroup trivial(const Group& group);
  static Subgroup full_torsion(const Group& group);

  const std::vector<GroupElement>& generators() const { return generators_; }
  /// Sorted, duplicate-free.
  const std::vector<GroupElement>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(const GroupElement& g) const;

  bool operator==(const Subgroup& other) const { return elements_ == other.elements_; }

 private:
  std::vector<GroupElement> generators_;
  std::vector<GroupElement> elements_;
};

/// Every subgroup of the torsion part, sorted by order then elements.
std::vector<Subgroup> subgroups(const Group& group);

/// A(Y, H): characters of the torsion part trivial on H, expressed in the
/// shared residue indexing. Torus coordinates of the dual are unconstrained
/// and not represented.
Subgroup annihilator(const Group& group, const Subgroup& h);

}  // namespace abelian
