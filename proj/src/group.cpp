#include "abelian/group.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <numbers>
#include <set>
#include <sstream>

#include "abelian/errors.hpp"
#include "abelian/smith.hpp"

namespace abelian {

bool operator<(const GroupElement& lhs, const GroupElement& rhs) {
  if (lhs.torsion != rhs.torsion) return lhs.torsion < rhs.torsion;
  const std::size_t n = std::min(lhs.lattice.size(), rhs.lattice.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs.lattice[i] != rhs.lattice[i]) return lhs.lattice[i] < rhs.lattice[i];
  }
  return lhs.lattice.size() < rhs.lattice.size();
}

bool operator<(const DualPoint& lhs, const DualPoint& rhs) {
  if (lhs.torsion != rhs.torsion) return lhs.torsion < rhs.torsion;
  const std::size_t n = std::min(lhs.lattice.size(), rhs.lattice.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (lhs.lattice[i] != rhs.lattice[i]) return lhs.lattice[i] < rhs.lattice[i];
  }
  return lhs.lattice.size() < rhs.lattice.size();
}

Group::Group(std::size_t lattice_rank, std::vector<std::int64_t> invariant_factors)
    : lattice_rank_(lattice_rank), factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw SchemaError("invariant factors must be >= 2");
    if (i > 0 && factors_[i] % factors_[i - 1] != 0) {
      throw SchemaError("invariant factors must form a divisibility chain; use Group::from_cyclic");
    }
  }
}

Group Group::cyclic(std::int64_t order) {
  if (order < 1) throw SchemaError("cyclic group order must be >= 1");
  if (order == 1) return Group();
  return Group(0, {order});
}

Group Group::lattice(std::size_t rank) { return Group(rank, {}); }

GroupNormalization Group::from_cyclic(std::size_t lattice_rank, std::span<const std::int64_t> orders) {
  for (const auto n : orders) {
    if (n < 1) throw SchemaError("cyclic factor orders must be >= 1");
  }
  const std::size_t r = orders.size();
  bool canonical = true;
  for (std::size_t i = 0; i < r; ++i) {
    canonical = canonical && orders[i] >= 2 && (i == 0 || orders[i] % orders[i - 1] == 0);
  }
  if (canonical) {
    GroupNormalization out{Group(lattice_rank, {orders.begin(), orders.end()}), {}};
    for (std::size_t i = 0; i < lattice_rank + r; ++i) {
      GroupElement e = out.group.zero();
      if (i < lattice_rank) {
        e.lattice[i] = 1;
      } else {
        e.torsion[i - lattice_rank] = 1;
      }
      out.generator_images.push_back(std::move(e));
    }
    return out;
  }
  IntegerMatrix relations(r, std::vector<Integer>(r, 0));
  for (std::size_t i = 0; i < r; ++i) relations[i][i] = static_cast<long>(orders[i]);
  const SmithForm snf = smith_normal_form(std::move(relations));

  std::vector<std::int64_t> factors;
  std::vector<std::size_t> torsion_rows;
  for (std::size_t t = 0; t < r; ++t) {
    if (snf.diagonal[t] > 1) {
      factors.push_back(to_int64(snf.diagonal[t]));
      torsion_rows.push_back(t);
    }
  }
  GroupNormalization out{Group(lattice_rank, factors), {}};
  for (std::size_t i = 0; i < lattice_rank; ++i) {
    GroupElement e = out.group.zero();
    e.lattice[i] = 1;
    out.generator_images.push_back(std::move(e));
  }
  for (std::size_t gen = 0; gen < r; ++gen) {
    GroupElement e = out.group.zero();
    for (std::size_t k = 0; k < torsion_rows.size(); ++k) {
      e.torsion[k] = mod_floor(snf.left[torsion_rows[k]][gen], factors[k]);
    }
    out.generator_images.push_back(std::move(e));
  }
  return out;
}

GroupElement GroupNormalization::map(std::span<const Integer> lattice, std::span<const Integer> torsion) const {
  const std::size_t d = group.lattice_rank();
  if (lattice.size() != d || d + torsion.size() != generator_images.size()) {
    throw SchemaError("element coordinates do not match the group decomposition");
  }
  GroupElement acc = group.zero();
  for (std::size_t i = 0; i < d; ++i) acc = group.add(acc, group.scale(lattice[i], generator_images[i]));
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    acc = group.add(acc, group.scale(torsion[i], generator_images[d + i]));
  }
  return acc;
}

std::int64_t Group::torsion_order() const {
  std::int64_t order = 1;
  for (const auto n : factors_) {
    if (order > std::numeric_limits<std::int64_t>::max() / n) throw std::overflow_error("torsion order overflow");
    order *= n;
  }
  return order;
}

std::int64_t Group::torsion_exponent() const { return factors_.empty() ? 1 : factors_.back(); }

GroupElement Group::zero() const {
  return GroupElement{std::vector<Integer>(lattice_rank_, 0), std::vector<std::int64_t>(factors_.size(), 0)};
}

GroupElement Group::element(std::vector<Integer> lattice, std::vector<std::int64_t> torsion) const {
  if (lattice.size() != lattice_rank_ || torsion.size() != factors_.size()) {
    throw SchemaError("element shape does not match group " + name());
  }
  for (std::size_t i = 0; i < torsion.size(); ++i) torsion[i] = mod_floor(torsion[i], factors_[i]);
  return GroupElement{std::move(lattice), std::move(torsion)};
}

GroupElement Group::element(std::int64_t value) const {
  if (lattice_rank_ == 1 && factors_.empty()) return element({Integer(static_cast<long>(value))}, {});
  if (lattice_rank_ == 0 && factors_.size() == 1) return element({}, {value});
  if (is_trivial()) return zero();
  throw SchemaError("scalar element shorthand requires a cyclic group or Z, got " + name());
}

bool Group::contains(const GroupElement& g) const {
  if (g.lattice.size() != lattice_rank_ || g.torsion.size() != factors_.size()) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (g.torsion[i] < 0 || g.torsion[i] >= factors_[i]) return false;
  }
  return true;
}

void Group::require(const GroupElement& g) const {
  if (!contains(g)) throw PreconditionError("element does not belong to group " + name());
}

GroupElement Group::add(const GroupElement& g, const GroupElement& h) const {
  require(g);
  require(h);
  GroupElement out = g;
  for (std::size_t i = 0; i < lattice_rank_; ++i) out.lattice[i] += h.lattice[i];
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    out.torsion[i] += h.torsion[i];
    if (out.torsion[i] >= factors_[i]) out.torsion[i] -= factors_[i];
  }
  return out;
}

GroupElement Group::negate(const GroupElement& g) const {
  require(g);
  GroupElement out = g;
  for (auto& x : out.lattice) x = -x;
  for (std::size_t i = 0; i < factors_.size(); ++i) out.torsion[i] = out.torsion[i] == 0 ? 0 : factors_[i] - out.torsion[i];
  return out;
}

GroupElement Group::subtract(const GroupElement& g, const GroupElement& h) const { return add(g, negate(h)); }

GroupElement Group::scale(const Integer& a, const GroupElement& g) const {
  require(g);
  GroupElement out = g;
  for (auto& x : out.lattice) x *= a;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t ai = mod_floor(a, factors_[i]);
    // both operands < n_i <= 2^31 in practice; use 128-bit to stay safe
    out.torsion[i] = static_cast<std::int64_t>((static_cast<__int128>(ai) * out.torsion[i]) % factors_[i]);
  }
  return out;
}

bool Group::is_zero(const GroupElement& g) const {
  return std::all_of(g.lattice.begin(), g.lattice.end(), [](const Integer& x) { return x == 0; }) &&
         std::all_of(g.torsion.begin(), g.torsion.end(), [](std::int64_t x) { return x == 0; });
}

std::int64_t Group::order_of(const GroupElement& g) const {
  require(g);
  for (const auto& x : g.lattice) {
    if (x != 0) return 0;
  }
  std::int64_t order = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    order = lcm64(order, factors_[i] / gcd64(factors_[i], g.torsion[i]));
  }
  return order;
}

std::int64_t Group::torsion_index(std::span<const std::int64_t> torsion) const {
  std::int64_t index = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) index = index * factors_[i] + torsion[i];
  return index;
}

std::vector<std::int64_t> Group::torsion_at(std::int64_t index) const {
  std::vector<std::int64_t> out(factors_.size(), 0);
  for (std::size_t i = factors_.size(); i-- > 0;) {
    out[i] = index % factors_[i];
    index /= factors_[i];
  }
  return out;
}

std::vector<GroupElement> Group::torsion_elements() const {
  const std::int64_t n = torsion_order();
  std::vector<GroupElement> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    out.push_back(GroupElement{std::vector<Integer>(lattice_rank_, 0), torsion_at(i)});
  }
  return out;
}

DualPoint Group::dual_zero() const {
  return DualPoint{std::vector<std::int64_t>(factors_.size(), 0), std::vector<Rational>(lattice_rank_, 0)};
}

DualPoint Group::dual_point(std::vector<std::int64_t> torsion, std::vector<Rational> lattice) const {
  if (lattice.empty() && lattice_rank_ > 0) lattice.assign(lattice_rank_, 0);
  if (torsion.size() != factors_.size() || lattice.size() != lattice_rank_) {
    throw SchemaError("dual point shape does not match group " + name());
  }
  for (std::size_t i = 0; i < torsion.size(); ++i) torsion[i] = mod_floor(torsion[i], factors_[i]);
  for (auto& q : lattice) q = fractional_part(q);
  return DualPoint{std::move(torsion), std::move(lattice)};
}

bool Group::contains(const DualPoint& y) const {
  if (y.torsion.size() != factors_.size() || y.lattice.size() != lattice_rank_) return false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (y.torsion[i] < 0 || y.torsion[i] >= factors_[i]) return false;
  }
  return std::all_of(y.lattice.begin(), y.lattice.end(), [](const Rational& q) { return q >= 0 && q < 1; });
}

void Group::require(const DualPoint& y) const {
  if (!contains(y)) throw PreconditionError("dual point does not belong to the dual of " + name());
}

DualPoint Group::dual_add(const DualPoint& y, const DualPoint& z) const {
  require(y);
  require(z);
  DualPoint out = y;
  for (std::size_t i = 0; i < factors_.size(); ++i) out.torsion[i] = (y.torsion[i] + z.torsion[i]) % factors_[i];
  for (std::size_t i = 0; i < lattice_rank_; ++i) out.lattice[i] = fractional_part(y.lattice[i] + z.lattice[i]);
  return out;
}

DualPoint Group::dual_negate(const DualPoint& y) const { return dual_scale(-1, y); }

DualPoint Group::dual_scale(const Integer& a, const DualPoint& y) const {
  require(y);
  DualPoint out = y;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const std::int64_t ai = mod_floor(a, factors_[i]);
    out.torsion[i] = static_cast<std::int64_t>((static_cast<__int128>(ai) * y.torsion[i]) % factors_[i]);
  }
  for (std::size_t i = 0; i < lattice_rank_; ++i) out.lattice[i] = fractional_part(Rational(a) * y.lattice[i]);
  return out;
}

std::vector<DualPoint> Group::finite_dual() const {
  const std::int64_t n = torsion_order();
  std::vector<DualPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) out.push_back(DualPoint{torsion_at(i), std::vector<Rational>(lattice_rank_, 0)});
  return out;
}

Rational Group::pairing_phase(const GroupElement& x, const DualPoint& y) const {
  require(x);
  require(y);
  Rational phase = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto prod = static_cast<std::int64_t>((static_cast<__int128>(x.torsion[i]) * y.torsion[i]) % factors_[i]);
    phase += Rational(static_cast<long>(prod), static_cast<unsigned long>(factors_[i]));
  }
  for (std::size_t i = 0; i < lattice_rank_; ++i) phase += Rational(x.lattice[i]) * y.lattice[i];
  phase.canonicalize();
  return fractional_part(phase);
}

std::complex<double> Group::pairing(const GroupElement& x, const DualPoint& y) const {
  const Rational phase = pairing_phase(x, y);
  if (phase == 0) return {1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * to_double(phase));
}

std::string Group::name() const {
  if (is_trivial()) return "{0}";
  std::ostringstream os;
  bool first = true;
  for (const auto n : factors_) {
    if (!first) os << " x ";
    os << "Z(" << n << ")";
    first = false;
  }
  if (lattice_rank_ > 0) {
    if (!first) os << " x ";
    os << "Z";
    if (lattice_rank_ > 1) os << "^" << lattice_rank_;
  }
  return os.str();
}

bool admissible(const Group& group, const Integer& a) {
  if (group.lattice_rank() > 0 && a != 0) return true;
  for (const auto n : group.invariant_factors()) {
    if (mod_floor(a, n) != 0) return true;
  }
  return false;
}

Subgroup Subgroup::generated(const Group& group, std::vector<GroupElement> generators) {
  for (const auto& g : generators) {
    group.require(g);
    if (!std::all_of(g.lattice.begin(), g.lattice.end(), [](const Integer& x) { return x == 0; })) {
      throw PreconditionError("subgroup generators must lie in the torsion part");
    }
  }
  std::set<GroupElement> seen{group.zero()};
  std::vector<GroupElement> kept;
  for (auto& g : generators) {
    if (seen.count(g)) continue;
    kept.push_back(std::move(g));
    std::vector<GroupElement> frontier(seen.begin(), seen.end());
    while (!frontier.empty()) {
      std::vector<GroupElement> next;
      for (const auto& x : frontier) {
        GroupElement y = group.add(x, kept.back());
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
      frontier = std::move(next);
    }
  }
  Subgroup out;
  out.generators_ = std::move(kept);
  out.elements_.assign(seen.begin(), seen.end());
  return out;
}

Subgroup Subgroup::trivial(const Group& group) { return generated(group, {}); }

Subgroup Subgroup::full_torsion(const Group& group) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < group.torsion_rank(); ++i) {
    GroupElement e = group.zero();
    e.torsion[i] = 1;
    gens.push_back(std::move(e));
  }
  return generated(group, std::move(gens));
}

bool Subgroup::contains(const GroupElement& g) const { return std::binary_search(elements_.begin(), elements_.end(), g); }

std::vector<Subgroup> subgroups(const Group& group) {
  // Breadth-first over "add one more generator"; every subgroup of a finite
  // group is reached from {0} this way.
  const auto elements = group.torsion_elements();
  std::set<std::vector<GroupElement>> seen;
  std::vector<Subgroup> all;
  Subgroup start = Subgroup::trivial(group);
  seen.insert(start.elements());
  all.push_back(start);
  std::vector<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (const auto idx : frontier) {
      for (const auto& g : elements) {
        if (all[idx].contains(g)) continue;
        auto gens = all[idx].generators();
        gens.push_back(g);
        Subgroup h = Subgroup::generated(group, std::move(gens));
        if (seen.insert(h.elements()).second) {
          all.push_back(std::move(h));
          next.push_back(all.size() - 1);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elements() < b.elements();
  });
  return all;
}

Subgroup annihilator(const Group& group, const Subgroup& h) {
  std::vector<GroupElement> members;
  for (const auto& y : group.finite_dual()) {
    bool trivial = true;
    for (const auto& x : h.generators()) {
      if (group.pairing_phase(x, y) != 0) {
        trivial = false;
        break;
      }
    }
    if (trivial) members.push_back(GroupElement{std::vector<Integer>(group.lattice_rank(), 0), y.torsion});
  }
  return Subgroup::generated(group, std::move(members));
}

}  // namespace abelian
