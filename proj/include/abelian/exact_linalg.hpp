#pragma once

// Row echelon forms maintained incrementally over an exact field. Used for
// the rank/nullspace computations behind the polynomial and parallelogram
// solvers.

#include <cstdint>
#include <optional>
#include <vector>

#include "abelian/numeric.hpp"

namespace abelian {

/// Arithmetic modulo the Mersenne prime 2^31 - 1.
struct ModP {
  static constexpr std::uint64_t kPrime = 2147483647ULL;
  std::uint64_t v = 0;

  ModP() = default;
  ModP(std::int64_t x) : v(static_cast<std::uint64_t>(mod_floor(x, static_cast<std::int64_t>(kPrime)))) {}

  friend ModP operator+(ModP a, ModP b) { return from_raw((a.v + b.v) % kPrime); }
  friend ModP operator-(ModP a, ModP b) { return from_raw((a.v + kPrime - b.v) % kPrime); }
  friend ModP operator*(ModP a, ModP b) { return from_raw((a.v * b.v) % kPrime); }
  friend bool operator==(ModP a, ModP b) { return a.v == b.v; }
  friend bool operator!=(ModP a, ModP b) { return a.v != b.v; }

  ModP inverse() const {
    std::uint64_t result = 1, base = v, e = kPrime - 2;
    while (e) {
      if (e & 1) result = result * base % kPrime;
      base = base * base % kPrime;
      e >>= 1;
    }
    return from_raw(result);
  }

  static ModP from_raw(std::uint64_t raw) {
    ModP m;
    m.v = raw;
    return m;
  }
};

template <class Field>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational inverse(const Rational& x) { return 1 / x; }
  static bool is_zero(const Rational& x) { return x == 0; }
};

template <>
struct FieldTraits<ModP> {
  static ModP inverse(ModP x) { return x.inverse(); }
  static bool is_zero(ModP x) { return x.v == 0; }
};

/// Reduced row echelon form built one row at a time.
template <class Field>
class IncrementalEchelon {
 public:
  explicit IncrementalEchelon(std::size_t columns) : columns_(columns) {}

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }
  bool full() const { return rows_.size() == columns_; }

  /// Returns true when the row increased the rank.
  bool add_row(std::vector<Field> row) {
    using T = FieldTraits<Field>;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Field c = row[pivots_[r]];
      if (T::is_zero(c)) continue;
      for (std::size_t k = 0; k < columns_; ++k) {
        if (!T::is_zero(rows_[r][k])) row[k] = row[k] - c * rows_[r][k];
      }
    }
    std::optional<std::size_t> pivot;
    for (std::size_t k = 0; k < columns_; ++k) {
      if (!T::is_zero(row[k])) {
        pivot = k;
        break;
      }
    }
    if (!pivot) return false;
    const Field inv = T::inverse(row[*pivot]);
    for (auto& x : row) x = x * inv;
    for (auto& existing : rows_) {
      const Field c = existing[*pivot];
      if (T::is_zero(c)) continue;
      for (std::size_t k = 0; k < columns_; ++k) existing[k] = existing[k] - c * row[k];
    }
    rows_.push_back(std::move(row));
    pivots_.push_back(*pivot);
    return true;
  }

  /// Basis of {x : R x = 0}, one vector per free column.
  std::vector<std::vector<Field>> nullspace() const {
    std::vector<bool> is_pivot(columns_, false);
    for (const auto p : pivots_) is_pivot[p] = true;
    std::vector<std::vector<Field>> basis;
    for (std::size_t free = 0; free < columns_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Field> x(columns_, Field(0));
      x[free] = Field(1);
      for (std::size_t r = 0; r < rows_.size(); ++r) x[pivots_[r]] = Field(0) - rows_[r][free];
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  std::size_t columns_;
  std::vector<std::vector<Field>> rows_;
  std::vector<std::size_t> pivots_;
};

}  // namespace abelian
