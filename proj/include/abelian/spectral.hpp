#pragma once

// Characteristic functions over the dual group, exact zero detection,
// Fourier inversion on finite groups, and the parallelogram / polynomial
// detectors on finite duals.

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "abelian/cyclotomic.hpp"
#include "abelian/pmf.hpp"

namespace abelian {

/// Grid resolution per torus dimension used when the dual is not finite.
inline constexpr std::int64_t kDefaultTorusGrid = 64;

/// Exact value of the characteristic function at y.
Cyclotomic char_fn_exact(const Pmf& mu, const DualPoint& y);
std::complex<double> char_fn(const Pmf& mu, const DualPoint& y);

/// Full finite dual times the torus points k/resolution in each lattice coordinate.
std::vector<DualPoint> dual_grid(const Group& group, std::int64_t resolution = kDefaultTorusGrid);

struct NonvanishingReport {
  bool nonvanishing = true;
  bool exhaustive = true;  // false when a torus grid was sampled
  std::size_t points_checked = 0;
  std::optional<DualPoint> zero_at;
};

NonvanishingReport nonvanishing(const Pmf& mu, std::int64_t resolution = kDefaultTorusGrid);

struct CharFnEntry {
  DualPoint point;
  std::complex<double> value;
  bool exact_zero = false;
};

struct CharFnTable {
  Group group;
  std::vector<CharFnEntry> entries;
};

CharFnTable char_fn_table(const Pmf& mu, std::int64_t resolution = kDefaultTorusGrid);

/// Fourier inversion on a finite group. Each weight is rounded to the
/// nearest rational with denominator <= max_denominator and the result is
/// re-transformed; throws PreconditionError when the residual exceeds tol.
Pmf inverse_transform(const CharFnTable& table, std::int64_t max_denominator = 1 << 20,
                      double tol = kDefaultTolerance);

/// Exact inversion from cyclotomic values indexed by torsion index.
Pmf inverse_transform_exact(const Group& group, const std::vector<Cyclotomic>& values);

/// Closest fraction to x with denominator <= max_denominator.
Rational best_rational(double x, std::int64_t max_denominator);

/// A function on the finite dual, indexed by Group::torsion_index.
template <class Scalar>
using DualFunction = std::vector<Scalar>;

namespace detail {
inline bool near_zero(const Rational& x, double) { return x == 0; }
inline bool near_zero(double x, double tol) { return std::abs(x) <= tol; }
inline bool near_zero(const std::complex<double>& x, double tol) { return std::abs(x) <= tol; }
inline bool near_zero(std::int64_t x, double) { return x == 0; }
}  // namespace detail

/// phi(u+v) + phi(u-v) == 2[phi(u) + phi(v)] for every pair of dual points.
template <class Scalar>
bool parallelogram_check(const Group& group, const DualFunction<Scalar>& phi, double tol = kDefaultTolerance) {
  const auto dual = group.finite_dual();
  for (const auto& u : dual) {
    for (const auto& v : dual) {
      const Scalar lhs = phi[group.torsion_index(group.dual_add(u, v).torsion)] +
                         phi[group.torsion_index(group.dual_add(u, group.dual_negate(v)).torsion)];
      const Scalar rhs = Scalar(2) * (phi[group.torsion_index(u.torsion)] + phi[group.torsion_index(v.torsion)]);
      if (!detail::near_zero(lhs - rhs, tol)) return false;
    }
  }
  return true;
}

/// (Delta_h^{order} f)(y) with (Delta_h f)(y) = f(y+h) - f(y).
template <class Scalar>
Scalar iterated_difference(const Group& group, const DualFunction<Scalar>& f, const DualPoint& y, const DualPoint& h,
                           unsigned order) {
  Scalar total = Scalar(0);
  Integer binom = 1;
  DualPoint point = y;
  for (unsigned k = 0; k <= order; ++k) {
    const bool negative = (order - k) % 2 == 1;
    const Scalar term = Scalar(binom.get_si()) * f[group.torsion_index(point.torsion)];
    if (negative) {
      total = total - term;
    } else {
      total = total + term;
    }
    point = group.dual_add(point, h);
    binom = binom * (order - k) / (k + 1);
  }
  return total;
}

/// Delta_h^{l+1} f == 0 for every h and y of the finite dual.
template <class Scalar>
bool is_polynomial(const Group& group, const DualFunction<Scalar>& f, unsigned l, double tol = kDefaultTolerance) {
  const auto dual = group.finite_dual();
  for (const auto& h : dual) {
    for (const auto& y : dual) {
      if (!detail::near_zero(iterated_difference(group, f, y, h, l + 1), tol)) return false;
    }
  }
  return true;
}

/// Basis of the rational solutions of the parallelogram identity on the
/// finite dual; empty means only the zero function.
std::vector<DualFunction<Rational>> parallelogram_solution_space(const Group& group);

/// Dimension of {f : Delta_h^{l+1} f = 0 for all h} on the finite dual,
/// optionally with the extra constraint f(0) = 0.
std::size_t polynomial_space_dimension(const Group& group, unsigned l, bool vanish_at_zero = false);

/// A finite group isomorphic to Y x Y, used to tabulate functions of (u, v).
Group square(const Group& group);

}  // namespace abelian
