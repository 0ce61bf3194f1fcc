#include "abelian/elimination.hpp"

#include <algorithm>
#include <sstream>

#include "abelian/errors.hpp"

namespace abelian {

std::string to_string(const ShiftSymbol& symbol) {
  switch (symbol.kind) {
    case ShiftSymbol::Kind::K:
      return "k" + std::to_string(symbol.index + 1);
    case ShiftSymbol::Kind::L:
      return "l" + std::to_string(symbol.index + 1);
    case ShiftSymbol::Kind::H:
      return "h";
    case ShiftSymbol::Kind::KPoly:
      return "k";
  }
  return "?";
}

ShiftExpr ShiftExpr::term(const Integer& coefficient, ShiftSymbol symbol) {
  ShiftExpr e;
  e.add(coefficient, symbol);
  return e;
}

ShiftExpr& ShiftExpr::add(const Integer& coefficient, ShiftSymbol symbol) {
  if (coefficient == 0) return *this;
  Integer& slot = terms_[symbol];
  slot += coefficient;
  if (slot == 0) terms_.erase(symbol);
  return *this;
}

ShiftExpr ShiftExpr::operator+(const ShiftExpr& other) const {
  ShiftExpr out = *this;
  for (const auto& [s, c] : other.terms_) out.add(c, s);
  return out;
}

ShiftExpr ShiftExpr::scaled(const Integer& factor) const {
  ShiftExpr out;
  for (const auto& [s, c] : terms_) out.add(c * factor, s);
  return out;
}

Integer ShiftExpr::coefficient(ShiftSymbol symbol) const {
  const auto it = terms_.find(symbol);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::string to_string(const ShiftExpr& expr) {
  if (expr.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : expr.terms()) {
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag.get_str() << "*";
    os << to_string(s);
    first = false;
  }
  return os.str();
}

std::string substitution_string(const std::string& var, const ShiftExpr& shift) {
  if (shift.is_zero()) return var;
  const std::string s = to_string(shift);
  if (s.front() == '-') return var + " - " + s.substr(1);
  return var + " + " + s;
}

std::string to_string(const DeltaFactor& factor) {
  std::string out = "D[" + to_string(factor.shift) + "]";
  if (factor.power != 1) out += "^" + std::to_string(factor.power);
  return out;
}

std::string to_string(const FunctionRef& ref) {
  return (ref.family == FunctionRef::Family::Phi ? "phi" : "psi") + std::to_string(ref.index + 1);
}

bool EquationTerm::vanishes() const {
  return std::any_of(ops.begin(), ops.end(), [](const DeltaFactor& f) { return f.is_zero_operator(); });
}

bool SymbolicEquation::is_zero() const {
  auto all_vanish = [](const std::vector<EquationTerm>& side) {
    return std::all_of(side.begin(), side.end(), [](const EquationTerm& t) { return t.vanishes(); });
  };
  const bool q_gone = !has_q || q_killed ||
                      std::any_of(q_ops.begin(), q_ops.end(), [](const PairShift& p) { return p.is_zero_operator(); });
  return all_vanish(lhs) && all_vanish(rhs) && q_gone;
}

std::size_t SymbolicEquation::live_functions() const {
  std::size_t count = 0;
  for (const auto& t : lhs) count += t.vanishes() ? 0 : 1;
  for (const auto& t : rhs) count += t.vanishes() ? 0 : 1;
  return count;
}

namespace {

std::string linear_string(const Integer& alpha, const Integer& beta) {
  std::string out;
  auto append = [&](const Integer& c, const char* var) {
    if (c == 0) return;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    const Integer mag = abs(c);
    if (mag != 1) out += mag.get_str() + "*";
    out += var;
  };
  append(alpha, "u");
  append(beta, "v");
  return out.empty() ? "0" : out;
}

std::string term_string(const EquationTerm& t) {
  std::string out;
  for (const auto& f : reading_order(t)) out += to_string(f) + " ";
  return out + to_string(t.function) + "(" + linear_string(t.alpha, t.beta) + ")";
}

std::string side_string(const std::vector<EquationTerm>& side) {
  if (side.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < side.size(); ++i) {
    if (i) out += " + ";
    out += term_string(side[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const SymbolicEquation& eq) {
  std::string out = side_string(eq.lhs) + " = " + side_string(eq.rhs);
  if (eq.has_q && !eq.q_killed) {
    out += " + ";
    for (auto it = eq.q_ops.rbegin(); it != eq.q_ops.rend(); ++it) {
      out += "D[(" + to_string(it->u) + ", " + to_string(it->v) + ")]";
      if (it->power != 1) out += "^" + std::to_string(it->power);
      out += " ";
    }
    out += "q(u, v)";
  }
  return out;
}

SymbolicEquation FunctionalEquation::initial() const {
  SymbolicEquation eq;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    eq.lhs.push_back({{FunctionRef::Family::Phi, j}, phi[j].first, phi[j].second, {}});
  }
  for (std::size_t j = 0; j < psi.size(); ++j) {
    eq.rhs.push_back({{FunctionRef::Family::Psi, j}, psi[j].first, psi[j].second, {}});
  }
  eq.has_q = q_degree.has_value();
  return eq;
}

SymbolicEquation cascade_step(const SymbolicEquation& eq, FunctionRef target, ShiftSymbol symbol,
                              CascadeStep* record) {
  const auto& side = target.family == FunctionRef::Family::Phi ? eq.lhs : eq.rhs;
  const auto it = std::find_if(side.begin(), side.end(), [&](const EquationTerm& t) { return t.function == target; });
  if (it == side.end()) throw PreconditionError(to_string(target) + " does not occur in the equation");
  const Integer su = it->beta;
  const Integer sv = -it->alpha;

  CascadeStep step;
  step.removed = target;
  step.symbol = symbol;
  step.u_shift = ShiftExpr::term(su, symbol);
  step.v_shift = ShiftExpr::term(sv, symbol);

  SymbolicEquation out;
  out.has_q = eq.has_q;
  out.q_ops = eq.q_ops;
  out.q_killed = eq.q_killed;
  auto transform = [&](const std::vector<EquationTerm>& in, std::vector<EquationTerm>& dst) {
    for (const auto& t : in) {
      if (t.function == target) continue;
      EquationTerm next = t;
      DeltaFactor factor{ShiftExpr::term(t.alpha * su + t.beta * sv, symbol), 1};
      if (factor.is_zero_operator()) step.vanished.push_back(t.function);
      step.new_factors.emplace_back(t.function, factor);
      next.ops.push_back(std::move(factor));
      dst.push_back(std::move(next));
    }
  };
  transform(eq.lhs, out.lhs);
  transform(eq.rhs, out.rhs);
  if (out.has_q) out.q_ops.push_back({step.u_shift, step.v_shift, 1});
  if (record) *record = std::move(step);
  return out;
}

SymbolicEquation kill_step(const SymbolicEquation& eq, unsigned l, CascadeStep* record) {
  if (!eq.has_q) throw PreconditionError("kill step requires a polynomial term");
  const ShiftSymbol h{ShiftSymbol::Kind::H, 0};
  const ShiftSymbol k{ShiftSymbol::Kind::KPoly, 0};
  CascadeStep step;
  step.kill = true;
  step.power = l + 1;
  step.u_shift = ShiftExpr::term(1, h);
  step.v_shift = ShiftExpr::term(1, k);
  SymbolicEquation out = eq;
  auto transform = [&](std::vector<EquationTerm>& terms) {
    for (auto& t : terms) {
      DeltaFactor factor{ShiftExpr::term(t.alpha, h) + ShiftExpr::term(t.beta, k), l + 1};
      if (factor.is_zero_operator()) step.vanished.push_back(t.function);
      step.new_factors.emplace_back(t.function, factor);
      t.ops.push_back(std::move(factor));
    }
  };
  transform(out.lhs);
  transform(out.rhs);
  out.q_ops.push_back({step.u_shift, step.v_shift, l + 1});
  out.q_killed = true;
  if (record) *record = std::move(step);
  return out;
}

std::size_t DiffDerivation::removal_steps() const {
  return equation.psi.size() + (equation.phi.empty() ? 0 : equation.phi.size() - 1);
}

DiffDerivation eliminate(const FunctionalEquation& equation) {
  if (equation.phi.empty()) throw PreconditionError("elimination needs at least one phi function");
  DiffDerivation out{equation, {}};
  for (std::size_t j = 0; j < equation.phi.size(); ++j) {
    FunctionDerivation d;
    d.target = j;
    SymbolicEquation eq = equation.initial();
    for (std::size_t t = equation.psi.size(); t-- > 0;) {
      CascadeStep step;
      eq = cascade_step(eq, {FunctionRef::Family::Psi, t}, {ShiftSymbol::Kind::K, t}, &step);
      d.steps.push_back(std::move(step));
    }
    for (std::size_t i = equation.phi.size(); i-- > 0;) {
      if (i == j) continue;
      CascadeStep step;
      eq = cascade_step(eq, {FunctionRef::Family::Phi, i}, {ShiftSymbol::Kind::L, i}, &step);
      d.steps.push_back(std::move(step));
    }
    if (equation.q_degree) {
      CascadeStep step;
      eq = kill_step(eq, *equation.q_degree, &step);
      d.steps.push_back(std::move(step));
    }
    d.final_term = eq.lhs.front();
    d.has_zero_shift = d.final_term.vanishes();
    d.result = std::move(eq);
    out.per_function.push_back(std::move(d));
  }
  return out;
}

DiffDerivation eliminate(const FormSystem& system, std::size_t m, std::optional<unsigned> q_degree) {
  system.validate();
  if (m < 1 || m > system.size()) {
    throw PreconditionError("m must satisfy 1 <= m <= n = " + std::to_string(system.size()));
  }
  FunctionalEquation eq;
  for (std::size_t j = 0; j < m; ++j) eq.phi.emplace_back(system.a[j], system.b[j]);
  for (std::size_t j = 0; j < system.size(); ++j) eq.psi.emplace_back(system.c[j], system.d[j]);
  eq.q_degree = q_degree;
  return eliminate(eq);
}

std::vector<DeltaFactor> reading_order(const EquationTerm& term) {
  return std::vector<DeltaFactor>(term.ops.rbegin(), term.ops.rend());
}

std::string proof_trace(const DiffDerivation& derivation) {
  std::ostringstream os;
  os << "equation: " << to_string(derivation.equation.initial()) << "\n";
  if (derivation.equation.q_degree) os << "q has degree <= " << *derivation.equation.q_degree << "\n";
  for (const auto& d : derivation.per_function) {
    os << "\nderivation for phi" << d.target + 1 << "\n";
    std::size_t n = 0;
    for (const auto& step : d.steps) {
      ++n;
      if (step.kill) {
        os << "  step " << n << ": apply D[(h, k)]^" << step.power << ", which annihilates q\n";
      } else {
        os << "  step " << n << ": u -> " << substitution_string("u", step.u_shift) << ", v -> "
           << substitution_string("v", step.v_shift)
           << ", subtract; removes " << to_string(step.removed) << "\n";
      }
      for (const auto& ref : step.vanished) os << "    warning: zero shift, " << to_string(ref) << " term vanishes\n";
    }
    os << "  result: " << to_string(d.result) << "\n";
    if (d.has_zero_shift) os << "  note: the derived operator contains D[0] and is the zero operator\n";
  }
  return os.str();
}

GroupElement evaluate_shift(const Group& y, const ShiftExpr& expr, const ShiftAssignment& values) {
  GroupElement total = y.zero();
  for (const auto& [symbol, c] : expr.terms()) {
    const auto it = values.find(symbol);
    if (it == values.end()) throw PreconditionError("no value assigned to shift " + to_string(symbol));
    total = y.add(total, y.scale(c, it->second));
  }
  return total;
}

namespace detail {

std::vector<std::pair<GroupElement, long>> expand_operator(const Group& y, const std::vector<GroupElement>& shifts) {
  std::map<GroupElement, long> acc{{y.zero(), 1}};
  for (const auto& s : shifts) {
    std::map<GroupElement, long> next;
    for (const auto& [g, c] : acc) {
      next[y.add(g, s)] += c;
      next[g] -= c;
    }
    acc.clear();
    for (auto& [g, c] : next) {
      if (c != 0) acc.emplace(g, c);
    }
  }
  return {acc.begin(), acc.end()};
}

std::vector<std::pair<std::pair<GroupElement, GroupElement>, long>> expand_pair_operator(
    const Group& y, const std::vector<std::pair<GroupElement, GroupElement>>& shifts) {
  std::map<std::pair<GroupElement, GroupElement>, long> acc{{{y.zero(), y.zero()}, 1}};
  for (const auto& [su, sv] : shifts) {
    std::map<std::pair<GroupElement, GroupElement>, long> next;
    for (const auto& [g, c] : acc) {
      next[{y.add(g.first, su), y.add(g.second, sv)}] += c;
      next[g] -= c;
    }
    acc.clear();
    for (auto& [g, c] : next) {
      if (c != 0) acc.emplace(g, c);
    }
  }
  return {acc.begin(), acc.end()};
}

std::vector<GroupElement> flatten(const Group& y, const std::vector<DeltaFactor>& ops, const ShiftAssignment& values) {
  std::vector<GroupElement> out;
  for (const auto& op : ops) {
    const GroupElement s = evaluate_shift(y, op.shift, values);
    for (unsigned p = 0; p < op.power; ++p) out.push_back(s);
  }
  return out;
}

FiniteTables::FiniteTables(const Group& y)
    : group(y), order(static_cast<std::size_t>(y.torsion_order())), elements(y.torsion_elements()) {
  if (!y.is_finite()) throw PreconditionError("numeric evaluation needs a finite dual");
  sum.resize(order * order);
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = 0; j < order; ++j) sum[i * order + j] = index(y.add(elements[i], elements[j]));
  }
}

std::size_t FiniteTables::index(const GroupElement& g) const {
  return static_cast<std::size_t>(group.torsion_index(g.torsion));
}

std::vector<std::size_t> FiniteTables::scaled(const Integer& a) const {
  std::vector<std::size_t> out(order);
  for (std::size_t i = 0; i < order; ++i) out[i] = index(group.scale(a, elements[i]));
  return out;
}

ExpandedTerm expand_term(const FiniteTables& t, const EquationTerm& term, const ShiftAssignment& values) {
  ExpandedTerm e{t.scaled(term.alpha), t.scaled(term.beta), {}};
  for (const auto& [s, sign] : expand_operator(t.group, flatten(t.group, term.ops, values))) {
    e.shifts.emplace_back(t.index(s), sign);
  }
  return e;
}

}  // namespace detail

}  // namespace abelian
