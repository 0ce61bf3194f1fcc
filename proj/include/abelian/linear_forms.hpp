#pragma once

// The four linear forms
//   L1 = sum a_j xi_j, L2 = sum b_j xi_j, L3 = sum c_j xi_j, L4 = sum d_j xi_j
// over independent group-valued variables, their joint laws, and the
// characteristic-function equation that characterizes equality of the
// pairs (L1, L2) and (L3, L4).

#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "abelian/cyclotomic.hpp"
#include "abelian/pmf.hpp"
#include "abelian/spectral.hpp"

namespace abelian {

struct FormSystem {
  std::vector<Integer> a, b, c, d;

  std::size_t size() const { return a.size(); }
  /// Throws SchemaError unless n >= 1 and all rows have length n.
  void validate() const;

  bool operator==(const FormSystem& other) const = default;
};

enum class Mode { Independent, QIndependent };

std::string to_string(Mode mode);

struct InstanceSpec {
  Group group;
  FormSystem system;
  std::vector<Pmf> dists;
  Mode mode = Mode::Independent;

  void validate() const;
};

/// Exact law of a pair of group-valued variables.
struct JointPmf {
  Group group;
  std::map<std::pair<GroupElement, GroupElement>, Rational> atoms;

  Pmf first_marginal() const;
  Pmf second_marginal() const;

  bool operator==(const JointPmf& other) const { return group == other.group && atoms == other.atoms; }
};

/// Law of (sum r1_j xi_j, sum r2_j xi_j) with xi_j ~ dists[j] independent.
JointPmf joint_pmf(const Group& group, std::span<const Integer> r1, std::span<const Integer> r2,
                   const std::vector<Pmf>& dists);

/// Law of sum r_j xi_j.
Pmf linear_form_law(const Group& group, std::span<const Integer> r, const std::vector<Pmf>& dists);

/// Exact comparison of the laws of (L1, L2) and (L3, L4).
bool identically_distributed(const InstanceSpec& spec);

/// prod mu_j^(a_j u + b_j v) - prod mu_j^(c_j u + d_j v), exactly.
Cyclotomic equation_residual_exact(const InstanceSpec& spec, const DualPoint& u, const DualPoint& v);
std::complex<double> equation_residual(const InstanceSpec& spec, const DualPoint& u, const DualPoint& v);

struct ResidualScan {
  bool exact_zero = true;  // every residual is symbolically zero
  double max_abs = 0.0;    // float path, computed independently
  std::size_t pairs = 0;
  bool exhaustive = true;
};

/// Scans all pairs of dual_grid points.
ResidualScan scan_equation_residual(const InstanceSpec& spec, std::int64_t resolution = kDefaultTorusGrid);

/// Indices i (0-based) with a_i d_j - b_i c_j admissible for every j.
std::vector<std::size_t> condition_indices(const FormSystem& system, const Group& group);

struct PrunedInstance {
  InstanceSpec spec;
  std::vector<std::size_t> dropped;  // original indices of all-zero variables
};

/// Drops variables whose four coefficients all vanish.
PrunedInstance prune_null_variables(const InstanceSpec& spec);

}  // namespace abelian
