#pragma once

// Symbolic finite-difference elimination for equations
//
//   sum_{j<=m} phi_j(a_j u + b_j v) = sum_{j<=n} psi_j(c_j u + d_j v) + q(u, v)
//
// with q a polynomial of degree l on Y^2 (or absent). Each step substitutes
// u + s_u t, v + s_v t for a fresh symbol t chosen so that one function's
// argument is unchanged, subtracts, and so removes that function. Numeric
// evaluation of the symbolic result on a finite group is provided for
// validation.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/linear_forms.hpp"
#include "abelian/spectral.hpp"

namespace abelian {

struct ShiftSymbol {
  enum class Kind { K, L, H, KPoly };
  Kind kind = Kind::K;
  std::size_t index = 0;  // 0-based for K and L; unused for H and KPoly

  auto operator<=>(const ShiftSymbol&) const = default;
};

std::string to_string(const ShiftSymbol& symbol);

/// Integer combination of shift symbols; zero coefficients are never stored.
class ShiftExpr {
 public:
  ShiftExpr() = default;
  static ShiftExpr term(const Integer& coefficient, ShiftSymbol symbol);

  ShiftExpr& add(const Integer& coefficient, ShiftSymbol symbol);
  ShiftExpr operator+(const ShiftExpr& other) const;
  ShiftExpr scaled(const Integer& factor) const;

  bool is_zero() const { return terms_.empty(); }
  const std::map<ShiftSymbol, Integer>& terms() const { return terms_; }
  Integer coefficient(ShiftSymbol symbol) const;

  bool operator==(const ShiftExpr& other) const = default;

 private:
  std::map<ShiftSymbol, Integer> terms_;
};

std::string to_string(const ShiftExpr& expr);
/// "u + 2*k1", "v - l2", or just the variable for a zero shift.
std::string substitution_string(const std::string& var, const ShiftExpr& shift);

/// Delta_shift^power.
struct DeltaFactor {
  ShiftExpr shift;
  unsigned power = 1;

  bool is_zero_operator() const { return shift.is_zero(); }
  bool operator==(const DeltaFactor&) const = default;
};

std::string to_string(const DeltaFactor& factor);

/// Delta_{(u_shift, v_shift)}^power acting on functions of (u, v).
struct PairShift {
  ShiftExpr u;
  ShiftExpr v;
  unsigned power = 1;

  bool is_zero_operator() const { return u.is_zero() && v.is_zero(); }
  bool operator==(const PairShift&) const = default;
};

struct FunctionRef {
  enum class Family { Phi, Psi };
  Family family = Family::Phi;
  std::size_t index = 0;  // 0-based

  auto operator<=>(const FunctionRef&) const = default;
};

std::string to_string(const FunctionRef& ref);

/// ops[0] is applied first; ops.back() is the outermost operator.
struct EquationTerm {
  FunctionRef function;
  Integer alpha, beta;
  std::vector<DeltaFactor> ops;

  bool vanishes() const;
};

struct SymbolicEquation {
  std::vector<EquationTerm> lhs;
  std::vector<EquationTerm> rhs;
  bool has_q = false;
  std::vector<PairShift> q_ops;
  bool q_killed = false;  // symbolic: q_ops annihilate every polynomial of degree <= l

  /// Every term carries a zero operator and q is absent or annihilated.
  bool is_zero() const;
  /// Distinct functions whose term does not vanish.
  std::size_t live_functions() const;
};

std::string to_string(const SymbolicEquation& eq);

struct FunctionalEquation {
  std::vector<std::pair<Integer, Integer>> phi;  // (a_j, b_j)
  std::vector<std::pair<Integer, Integer>> psi;  // (c_j, d_j)
  std::optional<unsigned> q_degree;              // none when q == 0

  SymbolicEquation initial() const;
};

struct CascadeStep {
  FunctionRef removed;
  std::optional<ShiftSymbol> symbol;  // none for the polynomial kill step
  ShiftExpr u_shift;                  // substitution u -> u + u_shift
  ShiftExpr v_shift;                  // substitution v -> v + v_shift
  bool kill = false;
  unsigned power = 1;
  std::vector<std::pair<FunctionRef, DeltaFactor>> new_factors;
  std::vector<FunctionRef> vanished;  // terms that picked up a zero shift
};

/// One substitution-and-subtract step that removes `target`.
SymbolicEquation cascade_step(const SymbolicEquation& eq, FunctionRef target, ShiftSymbol symbol,
                              CascadeStep* record = nullptr);

/// Applies Delta_{(h, k)}^{l+1} to every term and annihilates q.
SymbolicEquation kill_step(const SymbolicEquation& eq, unsigned l, CascadeStep* record = nullptr);

struct FunctionDerivation {
  std::size_t target = 0;
  std::vector<CascadeStep> steps;
  SymbolicEquation result;
  EquationTerm final_term;  // the surviving phi_target term
  bool has_zero_shift = false;
};

struct DiffDerivation {
  FunctionalEquation equation;
  std::vector<FunctionDerivation> per_function;

  /// Function-removal steps per derivation, excluding the kill step.
  std::size_t removal_steps() const;
};

DiffDerivation eliminate(const FunctionalEquation& equation);
/// phi_j uses (a_j, b_j) for j < m, psi_j uses (c_j, d_j) for all j.
DiffDerivation eliminate(const FormSystem& system, std::size_t m, std::optional<unsigned> q_degree);

/// Outermost-first factor list, the conventional reading order.
std::vector<DeltaFactor> reading_order(const EquationTerm& term);

std::string proof_trace(const DiffDerivation& derivation);

// ---------------------------------------------------------------------------
// Numeric evaluation on a finite group Y.

using ShiftAssignment = std::map<ShiftSymbol, GroupElement>;

/// Functions on Y indexed by torsion index, and q on Y^2 indexed by
/// index(u) * |Y| + index(v).
template <class Scalar>
struct FunctionTuple {
  std::vector<DualFunction<Scalar>> phi;
  std::vector<DualFunction<Scalar>> psi;
  std::vector<Scalar> q;  // empty means q == 0
};

GroupElement evaluate_shift(const Group& y, const ShiftExpr& expr, const ShiftAssignment& values);

namespace detail {

/// sum over subsets of the factor multiset of (-1)^(r-|S|) * [sum_S shifts].
std::vector<std::pair<GroupElement, long>> expand_operator(const Group& y, const std::vector<GroupElement>& shifts);

std::vector<std::pair<std::pair<GroupElement, GroupElement>, long>> expand_pair_operator(
    const Group& y, const std::vector<std::pair<GroupElement, GroupElement>>& shifts);

std::vector<GroupElement> flatten(const Group& y, const std::vector<DeltaFactor>& ops, const ShiftAssignment& values);

/// Addition and scaling on a finite group as torsion-index tables.
struct FiniteTables {
  explicit FiniteTables(const Group& y);

  std::size_t index(const GroupElement& g) const;
  std::size_t add(std::size_t i, std::size_t j) const { return sum[i * order + j]; }
  /// index(a * g_i) for every i.
  std::vector<std::size_t> scaled(const Integer& a) const;

  const Group& group;
  std::size_t order;
  std::vector<GroupElement> elements;
  std::vector<std::size_t> sum;
};

/// A term with its operator expanded: value = sum_s sign_s f(alpha u + beta v + s).
struct ExpandedTerm {
  std::vector<std::size_t> alpha_scaled, beta_scaled;
  std::vector<std::pair<std::size_t, long>> shifts;
};

ExpandedTerm expand_term(const FiniteTables& t, const EquationTerm& term, const ShiftAssignment& values);

template <class Scalar>
Scalar scaled(long coefficient, const Scalar& value) {
  return Scalar(coefficient) * value;
}

template <class Scalar>
Scalar apply(const FiniteTables& t, const ExpandedTerm& e, const DualFunction<Scalar>& f, std::size_t iu,
             std::size_t iv) {
  const std::size_t base = t.add(e.alpha_scaled[iu], e.beta_scaled[iv]);
  Scalar total(0);
  for (const auto& [s, sign] : e.shifts) total = total + scaled(sign, f[t.add(base, s)]);
  return total;
}

}  // namespace detail

/// Value of one term at (u, v).
template <class Scalar>
Scalar evaluate_term(const Group& y, const EquationTerm& term, const DualFunction<Scalar>& f, const GroupElement& u,
                     const GroupElement& v, const ShiftAssignment& values) {
  const detail::FiniteTables t(y);
  return detail::apply(t, detail::expand_term(t, term, values), f, t.index(u), t.index(v));
}

/// Residual lhs - rhs - q of a symbolic equation, tabulated on Y^2.
template <class Scalar>
std::vector<Scalar> evaluate_equation(const Group& y, const SymbolicEquation& eq, const FunctionTuple<Scalar>& fns,
                                      const ShiftAssignment& values) {
  const detail::FiniteTables t(y);
  const std::size_t order = t.order;
  auto pick = [&](const FunctionRef& ref) -> const DualFunction<Scalar>& {
    return ref.family == FunctionRef::Family::Phi ? fns.phi.at(ref.index) : fns.psi.at(ref.index);
  };
  struct Entry {
    detail::ExpandedTerm term;
    const DualFunction<Scalar>* f;
    bool lhs;
  };
  std::vector<Entry> entries;
  for (const auto& term : eq.lhs) {
    if (!term.vanishes()) entries.push_back({detail::expand_term(t, term, values), &pick(term.function), true});
  }
  for (const auto& term : eq.rhs) {
    if (!term.vanishes()) entries.push_back({detail::expand_term(t, term, values), &pick(term.function), false});
  }
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, long>> q_shifts;
  if (eq.has_q && !fns.q.empty()) {
    std::vector<std::pair<GroupElement, GroupElement>> shifts;
    for (const auto& op : eq.q_ops) {
      for (unsigned p = 0; p < op.power; ++p) {
        shifts.emplace_back(evaluate_shift(y, op.u, values), evaluate_shift(y, op.v, values));
      }
    }
    for (const auto& [s, sign] : detail::expand_pair_operator(y, shifts)) {
      q_shifts.push_back({{t.index(s.first), t.index(s.second)}, sign});
    }
  }
  std::vector<Scalar> out(order * order, Scalar(0));
  for (std::size_t iu = 0; iu < order; ++iu) {
    for (std::size_t iv = 0; iv < order; ++iv) {
      Scalar total(0);
      for (const auto& e : entries) {
        const Scalar value = detail::apply(t, e.term, *e.f, iu, iv);
        if (e.lhs) {
          total = total + value;
        } else {
          total = total - value;
        }
      }
      for (const auto& [s, sign] : q_shifts) {
        total = total - detail::scaled(sign, fns.q[t.add(iu, s.first) * order + t.add(iv, s.second)]);
      }
      out[iu * order + iv] = total;
    }
  }
  return out;
}

/// Step route: starts from the residual table of the initial equation and
/// applies each recorded substitution-and-subtract to the table itself.
template <class Scalar>
std::vector<Scalar> cascade_residual(const Group& y, const FunctionalEquation& equation,
                                     const FunctionDerivation& derivation, const FunctionTuple<Scalar>& fns,
                                     const ShiftAssignment& values) {
  const detail::FiniteTables t(y);
  const std::size_t order = t.order;
  std::vector<Scalar> table = evaluate_equation(y, equation.initial(), fns, values);
  for (const auto& step : derivation.steps) {
    const std::size_t su = t.index(evaluate_shift(y, step.u_shift, values));
    const std::size_t sv = t.index(evaluate_shift(y, step.v_shift, values));
    for (unsigned p = 0; p < step.power; ++p) {
      std::vector<Scalar> next(order * order, Scalar(0));
      for (std::size_t iu = 0; iu < order; ++iu) {
        for (std::size_t iv = 0; iv < order; ++iv) {
          next[iu * order + iv] = table[t.add(iu, su) * order + t.add(iv, sv)] - table[iu * order + iv];
        }
      }
      table = std::move(next);
    }
  }
  return table;
}

/// The derived per-function identity: the final operator applied to
/// phi_target alone.
template <class Scalar>
std::vector<Scalar> derived_residual(const Group& y, const FunctionDerivation& derivation,
                                     const FunctionTuple<Scalar>& fns, const ShiftAssignment& values) {
  const detail::FiniteTables t(y);
  const std::size_t order = t.order;
  const auto term = detail::expand_term(t, derivation.final_term, values);
  const auto& f = fns.phi.at(derivation.target);
  std::vector<Scalar> out(order * order, Scalar(0));
  for (std::size_t iu = 0; iu < order; ++iu) {
    for (std::size_t iv = 0; iv < order; ++iv) out[iu * order + iv] = detail::apply(t, term, f, iu, iv);
  }
  return out;
}

}  // namespace abelian
