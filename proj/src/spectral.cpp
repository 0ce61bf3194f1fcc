#include "abelian/spectral.hpp"

#include <algorithm>
#include <map>

#include "abelian/errors.hpp"
#include "abelian/exact_linalg.hpp"

namespace abelian {

Cyclotomic char_fn_exact(const Pmf& mu, const DualPoint& y) {
  const Group& g = mu.group();
  g.require(y);
  // Collect weights per phase first so the cyclotomic sum is formed once.
  std::map<Rational, Rational> by_phase;
  for (const auto& [x, w] : mu.atoms()) by_phase[g.pairing_phase(x, y)] += w;
  Cyclotomic total;
  for (const auto& [phase, w] : by_phase) total += Cyclotomic::root(phase).scaled(w);
  return total;
}

std::complex<double> char_fn(const Pmf& mu, const DualPoint& y) {
  const Group& g = mu.group();
  std::complex<double> total = 0;
  for (const auto& [x, w] : mu.atoms()) total += w.get_d() * g.pairing(x, y);
  return total;
}

std::vector<DualPoint> dual_grid(const Group& group, std::int64_t resolution) {
  if (resolution < 1) throw PreconditionError("torus grid resolution must be positive");
  std::vector<DualPoint> out = group.finite_dual();
  for (std::size_t dim = 0; dim < group.lattice_rank(); ++dim) {
    std::vector<DualPoint> next;
    next.reserve(out.size() * static_cast<std::size_t>(resolution));
    for (const auto& base : out) {
      for (std::int64_t k = 0; k < resolution; ++k) {
        DualPoint p = base;
        p.lattice[dim] = Rational(k, resolution);
        p.lattice[dim].canonicalize();
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

NonvanishingReport nonvanishing(const Pmf& mu, std::int64_t resolution) {
  NonvanishingReport report;
  report.exhaustive = mu.group().is_finite();
  for (const auto& y : dual_grid(mu.group(), resolution)) {
    ++report.points_checked;
    if (char_fn_exact(mu, y).is_zero()) {
      report.nonvanishing = false;
      report.zero_at = y;
      break;
    }
  }
  return report;
}

CharFnTable char_fn_table(const Pmf& mu, std::int64_t resolution) {
  CharFnTable table{mu.group(), {}};
  for (auto& y : dual_grid(mu.group(), resolution)) {
    const Cyclotomic exact = char_fn_exact(mu, y);
    const bool zero = exact.is_zero();
    table.entries.push_back({std::move(y), zero ? std::complex<double>(0) : exact.to_complex(), zero});
  }
  return table;
}

Rational best_rational(double x, std::int64_t max_denominator) {
  // Continued-fraction convergents plus the best semiconvergent.
  const double sign = x < 0 ? -1.0 : 1.0;
  double r = std::abs(x);
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(r);
    const auto a = static_cast<std::int64_t>(fl);
    if (q0 + a * q1 > max_denominator) {
      const std::int64_t k = q1 == 0 ? 0 : (max_denominator - q0) / q1;
      const Rational semi(p0 + k * p1, q0 + k * q1);
      const Rational conv(p1, q1);
      const Rational target(std::abs(x));
      Rational best = abs(semi - target) < abs(conv - target) ? semi : conv;
      best.canonicalize();
      return sign < 0 ? Rational(-best) : best;
    }
    const std::int64_t p2 = p0 + a * p1, q2 = q0 + a * q1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (r - fl < 1e-15) break;
    r = 1.0 / (r - fl);
  }
  Rational out(p1, q1);
  out.canonicalize();
  return sign < 0 ? Rational(-out) : out;
}

Pmf inverse_transform(const CharFnTable& table, std::int64_t max_denominator, double tol) {
  const Group& g = table.group;
  if (!g.is_finite()) throw PreconditionError("inverse transform needs a finite group");
  const auto n = static_cast<std::size_t>(g.torsion_order());
  std::vector<std::complex<double>> values(n);
  std::vector<bool> seen(n, false);
  for (const auto& e : table.entries) {
    const auto idx = static_cast<std::size_t>(g.torsion_index(e.point.torsion));
    values[idx] = e.value;
    seen[idx] = true;
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw PreconditionError("characteristic function table does not cover the dual");
  }
  const auto dual = g.finite_dual();
  std::vector<std::pair<GroupElement, Rational>> atoms;
  Rational total = 0;
  for (const auto& x : g.torsion_elements()) {
    std::complex<double> acc = 0;
    for (std::size_t k = 0; k < n; ++k) acc += values[k] * std::conj(g.pairing(x, dual[k]));
    acc /= static_cast<double>(n);
    Rational w = best_rational(acc.real(), max_denominator);
    if (w < 0 || std::abs(acc.imag()) > tol) {
      if (std::abs(acc) > tol) throw PreconditionError("table is not the transform of a probability distribution");
      w = 0;
    }
    total += w;
    atoms.emplace_back(x, w);
  }
  if (total != 1) throw PreconditionError("reconstructed weights do not sum to one");
  Pmf mu(g, std::move(atoms));
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(char_fn(mu, dual[k]) - values[k]) > tol) {
      throw PreconditionError("reconstruction residual exceeds tolerance");
    }
  }
  return mu;
}

Pmf inverse_transform_exact(const Group& group, const std::vector<Cyclotomic>& values) {
  if (!group.is_finite()) throw PreconditionError("inverse transform needs a finite group");
  const auto n = static_cast<std::size_t>(group.torsion_order());
  if (values.size() != n) throw PreconditionError("value table does not cover the dual");
  const auto dual = group.finite_dual();
  std::vector<std::pair<GroupElement, Rational>> atoms;
  for (const auto& x : group.torsion_elements()) {
    Cyclotomic acc;
    for (std::size_t k = 0; k < n; ++k) acc += values[k] * Cyclotomic::root(-group.pairing_phase(x, dual[k]));
    const auto w = acc.as_rational();
    if (!w || *w < 0) throw PreconditionError("table is not the transform of a probability distribution");
    atoms.emplace_back(x, *w / static_cast<long>(n));
  }
  return Pmf(group, std::move(atoms));
}

std::vector<DualFunction<Rational>> parallelogram_solution_space(const Group& group) {
  if (!group.is_finite()) throw PreconditionError("parallelogram solver needs a finite dual");
  const auto n = static_cast<std::size_t>(group.torsion_order());
  const auto dual = group.finite_dual();
  IncrementalEchelon<Rational> echelon(n);
  for (const auto& u : dual) {
    for (const auto& v : dual) {
      std::vector<Rational> row(n, 0);
      row[static_cast<std::size_t>(group.torsion_index(group.dual_add(u, v).torsion))] += 1;
      row[static_cast<std::size_t>(group.torsion_index(group.dual_add(u, group.dual_negate(v)).torsion))] += 1;
      row[static_cast<std::size_t>(group.torsion_index(u.torsion))] -= 2;
      row[static_cast<std::size_t>(group.torsion_index(v.torsion))] -= 2;
      echelon.add_row(std::move(row));
      if (echelon.full()) return {};
    }
  }
  return echelon.nullspace();
}

namespace {

template <class Field>
std::size_t polynomial_rank(const Group& group, unsigned l, bool vanish_at_zero, std::size_t stop_at) {
  const auto n = static_cast<std::size_t>(group.torsion_order());
  const auto dual = group.finite_dual();
  IncrementalEchelon<Field> echelon(n);
  if (vanish_at_zero) {
    std::vector<Field> row(n, Field(0));
    row[0] = Field(1);
    echelon.add_row(std::move(row));
  }
  std::vector<std::int64_t> binom(l + 2, 0);
  binom[0] = 1;
  for (unsigned k = 1; k <= l + 1; ++k) binom[k] = binom[k - 1] * (l + 2 - k) / k;
  for (const auto& h : dual) {
    for (const auto& y : dual) {
      std::vector<Field> row(n, Field(0));
      DualPoint point = y;
      for (unsigned k = 0; k <= l + 1; ++k) {
        const std::int64_t c = ((l + 1 - k) % 2 == 1) ? -binom[k] : binom[k];
        auto& slot = row[static_cast<std::size_t>(group.torsion_index(point.torsion))];
        slot = slot + Field(c);
        point = group.dual_add(point, h);
      }
      echelon.add_row(std::move(row));
      if (echelon.rank() >= stop_at) return echelon.rank();
    }
  }
  return echelon.rank();
}

}  // namespace

std::size_t polynomial_space_dimension(const Group& group, unsigned l, bool vanish_at_zero) {
  if (!group.is_finite()) throw PreconditionError("polynomial solver needs a finite dual");
  const auto n = static_cast<std::size_t>(group.torsion_order());
  // Constants always solve the homogeneous system, so the rank is at most
  // n - 1 without the f(0) = 0 row. A modular rank reaching that bound is a
  // rigorous certificate because the rank over Q is never smaller.
  const std::size_t bound = vanish_at_zero ? n : n - 1;
  if (polynomial_rank<ModP>(group, l, vanish_at_zero, bound) >= bound) return n - bound;
  return n - polynomial_rank<Rational>(group, l, vanish_at_zero, n);
}

Group square(const Group& group) {
  if (!group.is_finite()) throw PreconditionError("square() is defined for finite groups");
  std::vector<std::int64_t> orders = group.invariant_factors();
  orders.insert(orders.end(), group.invariant_factors().begin(), group.invariant_factors().end());
  return Group::from_cyclic(0, orders).group;
}

}  // namespace abelian
