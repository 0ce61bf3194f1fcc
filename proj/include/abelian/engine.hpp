#pragma once

// Hypothesis / conclusion verdicts for the four-forms characterization on
// concrete instances, its Q-independent variant, and the symmetric-law and
// independence specializations.

#include <optional>
#include <string>
#include <vector>

#include "abelian/linear_forms.hpp"
#include "abelian/pmf.hpp"
#include "abelian/reduction.hpp"
#include "abelian/spectral.hpp"

namespace abelian {

struct PolynomialCollapse {
  std::string check_group;          // finite group standing in for Y^2
  std::vector<unsigned> degrees;    // degrees l checked
  std::vector<std::size_t> dimensions;  // solution dimension with q(0) = 0, per degree
  bool exhaustive = true;           // false when a torus subgroup was sampled
  bool collapses = true;            // every dimension is 0
};

struct Verdict {
  enum class Status { Consistent, Inconsistent, Unverifiable };

  Mode mode = Mode::Independent;
  Group group;
  GroupClass group_class;

  bool identically_distributed = false;
  std::vector<NonvanishingReport> nonvanishing;
  bool nonvanishing_exhaustive = true;
  bool hypotheses_hold = false;

  std::vector<std::size_t> condition_set;       // 0-based, original numbering
  std::vector<Classification> conclusion_checks;  // parallel to condition_set
  bool conclusion_holds = true;

  std::string theorem;  // which statement applies, empty when none
  bool theorem_asserted = false;
  bool consistent = true;
  Status status = Status::Consistent;
  bool counterexample_regime = false;
  std::vector<std::size_t> dropped_variables;
  std::optional<PolynomialCollapse> q_collapse;
  std::vector<std::string> notes;
};

std::string to_string(Verdict::Status status);
int exit_code(Verdict::Status status);

struct VerifyOptions {
  /// Judge lattice groups by the statement that needs no nonvanishing
  /// hypothesis. When false the nonvanishing statement is used and a
  /// sampled (non-exhaustive) check can leave the verdict unverifiable.
  bool lattice_without_nonvanishing = true;
  std::int64_t torus_grid = kDefaultTorusGrid;
};

Verdict verify_instance(const InstanceSpec& spec, const VerifyOptions& options = {});

/// L3 = L1, L4 = -L2.
FormSystem heyde_specialize(const std::vector<Integer>& a, const std::vector<Integer>& b);

/// 2n variables: L1, L2, L3 = L1 on the first copy, L4 = sum b_j xi'_j on
/// an independent identically distributed copy.
InstanceSpec darmois_specialize(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                const std::vector<Pmf>& dists);

/// Indices i with a_i b_i admissible.
std::vector<std::size_t> darmois_condition(const std::vector<Integer>& a, const std::vector<Integer>& b,
                                           const Group& group);

struct QModeOptions {
  unsigned max_degree = 3;
  std::int64_t torus_check_order = 6;  // order of the finite torus subgroup sampled for lattice groups
  VerifyOptions verify;
};

PolynomialCollapse polynomial_collapse(const Group& group, const QModeOptions& options = {});

/// Checks that every polynomial q with q(0, 0) = 0 on the dual square is
/// zero, then judges the instance as in the independent case.
Verdict q_mode_check(const InstanceSpec& spec, const QModeOptions& options = {});

// ---------------------------------------------------------------------------
// Special-case substitutions.

/// Block of factors mu_j((mult_u * coef) u + (mult_v * coef) v) for j in a range.
struct FactorBlock {
  std::string range;        // e.g. "1..m"
  std::string coefficient;  // symbolic coefficient, e.g. "a_j"
  Integer mult_u, mult_v;
};

struct SpecialCaseReport {
  std::string kind;
  std::string group_family;  // "X = X_(3)" etc.
  std::int64_t p = 0;
  std::vector<FactorBlock> lhs, rhs;
  std::string substitution;  // "v = -u"
  std::vector<FactorBlock> reduced_lhs, reduced_rhs;  // single-variable multiples in mult_u
  std::string equation;
  std::string result;

  // Exhaustive confirmation on small-denominator distributions.
  std::string check_group;
  std::vector<Integer> check_coefficients;
  std::int64_t max_denominator = 0;
  std::size_t distributions = 0;
  std::size_t tuples_checked = 0;
  std::size_t tuples_satisfying = 0;
  bool all_forced_degenerate = true;
  bool substitution_verified = true;
};

enum class SpecialCase { X3Heyde, X2Darmois };

SpecialCaseReport special_case_derivations(SpecialCase kind, std::int64_t max_denominator = 6);

/// Every distribution on the finite group whose weights have denominators
/// dividing some q <= max_denominator.
std::vector<Pmf> small_denominator_pmfs(const Group& group, std::int64_t max_denominator);

}  // namespace abelian
