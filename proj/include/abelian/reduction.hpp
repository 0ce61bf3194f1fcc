#pragma once

// Coefficient reduction for a form system whose condition set is known:
// indices are grouped by the ratio a_i : b_i, the substitution u -> A u,
// v -> B v merges each ratio class into a single function, and the
// resulting rows are checked for pairwise independence.

#include <optional>
#include <string>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/linear_forms.hpp"

namespace abelian {

struct GroupClass {
  enum class Kind { TorsionFreeLattice, PGroup, Other };
  Kind kind = Kind::Other;
  std::int64_t p = 0;  // prime for PGroup
};

std::string to_string(GroupClass::Kind kind);

/// Torsion-free lattice: d >= 1, no torsion. p-group: d = 0 and every
/// invariant factor equals the same prime p (so pX = 0). Everything else,
/// including the trivial group, is Other.
GroupClass classify_group(const Group& group);

struct ReducedRow {
  enum class Origin { RatioClass, OnlyA, OnlyB, Residual };
  Origin origin = Origin::RatioClass;
  Integer A, B;                      // coefficients of u and v
  std::vector<std::size_t> members;  // original indices, 0-based
};

std::string to_string(ReducedRow::Origin origin);

struct InequalityCheck {
  std::string left;   // row labels
  std::string right;
  Integer value;
  bool nonzero = false;
  bool admissible = false;
};

struct ReducedSystem {
  enum class Outcome { Case1, Case2, Vacuous };
  Outcome outcome = Outcome::Vacuous;
  std::vector<std::size_t> condition_set;

  // Case 1
  Integer A = 1, B = 1;
  std::vector<ReducedRow> rows;      // ratio classes, then the present unit rows
  std::vector<ReducedRow> residual;  // indices outside the condition set
  std::vector<std::size_t> absent;   // residual indices with a_j, b_j both inadmissible
  std::vector<Integer> C, D;         // C_j = c_j A, D_j = d_j B
  std::vector<InequalityCheck> determinant_checks;  // A_i D_j - B_i C_j
  std::vector<InequalityCheck> bracket_checks;      // A_i B_j - B_i A_j
  bool determinants_hold = true;
  bool brackets_hold = true;

  // Case 2: substituting u = b y, v = -a y for the first condition index.
  std::vector<Integer> collapse_coefficients;  // b c_j - a d_j
  std::vector<bool> collapse_admissible;
  bool lhs_collapses = false;  // a_j b - b_j a inadmissible for every j
};

std::string to_string(ReducedSystem::Outcome outcome);

/// Throws PreconditionError unless the group is a torsion-free lattice or
/// an elementary p-group.
ReducedSystem reduce_coefficients(const FormSystem& system, const Group& group);

}  // namespace abelian
