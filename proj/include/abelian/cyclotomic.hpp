#pragma once

// Elements of the cyclotomic field Q(zeta_N) stored as sum_k c_k zeta_N^k,
// k in [0, N). The representation is not unique; equality and zero tests
// reduce modulo the cyclotomic polynomial Phi_N.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "abelian/numeric.hpp"

namespace abelian {

class Cyclotomic {
 public:
  /// Zero.
  Cyclotomic();

  static Cyclotomic rational(const Rational& value);
  /// exp(2 pi i t) for a rational phase t (any real value, reduced mod 1).
  static Cyclotomic root(const Rational& phase);

  std::int64_t conductor() const { return conductor_; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }

  /// Same value written over zeta_M where N | M.
  Cyclotomic lifted(std::int64_t multiple) const;

  Cyclotomic operator+(const Cyclotomic& other) const;
  Cyclotomic operator-(const Cyclotomic& other) const;
  Cyclotomic operator*(const Cyclotomic& other) const;
  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic scaled(const Rational& factor) const;
  Cyclotomic conj() const;

  bool is_zero() const;
  /// Canonical remainder modulo Phi_N (degree < phi(N)).
  std::vector<Rational> reduced() const;
  /// The value when it lies in Q.
  std::optional<Rational> as_rational() const;
  bool operator==(const Cyclotomic& other) const { return (*this - other).is_zero(); }

  std::complex<double> to_complex() const;

 private:
  Cyclotomic(std::int64_t conductor, std::vector<Rational> coeffs);

  std::int64_t conductor_ = 1;
  std::vector<Rational> coeffs_;
};

/// Integer coefficients of Phi_n, lowest degree first.
const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n);

}  // namespace abelian
