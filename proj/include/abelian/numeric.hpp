#pragma once

// Exact scalar types shared by every module. Integers and rationals are
// arbitrary precision (GMP); floating point appears only at display time
// and on the explicitly "float path" comparisons.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace abelian {

using Integer = mpz_class;
using Rational = mpq_class;

/// Default absolute tolerance for floating-point comparisons.
inline constexpr double kDefaultTolerance = 1e-9;

Integer parse_integer(std::string_view text);

/// Accepts "p", "p/q" or "-p/q"; the result is canonicalized.
Rational parse_rational(std::string_view text);

Rational make_rational(const Integer& num, const Integer& den);

std::string to_string(const Integer& value);
std::string to_string(const Rational& value);

/// Least nonnegative residue of `value` modulo `modulus` (modulus > 0).
std::int64_t mod_floor(const Integer& value, std::int64_t modulus);
std::int64_t mod_floor(std::int64_t value, std::int64_t modulus);

/// Fractional part in [0, 1).
Rational fractional_part(const Rational& value);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);

bool is_prime(std::int64_t n);

/// Converts to int64, throwing std::overflow_error when out of range.
std::int64_t to_int64(const Integer& value);

double to_double(const Rational& value);

}  // namespace abelian
