#include "abelian/numeric.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "abelian/errors.hpp"

namespace abelian {

Integer parse_integer(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw SchemaError("empty integer literal");
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char ch = s[i];
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || (i == 0 && ch == '-'))) {
      throw SchemaError("invalid integer literal '" + std::string(text) + "'");
    }
  }
  if (s == "-") throw SchemaError("invalid integer literal '-'");
  return Integer(s, 10);
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw SchemaError("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  return make_rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
}

std::string to_string(const Integer& value) { return value.get_str(); }

std::string to_string(const Rational& value) { return value.get_str(); }

std::int64_t mod_floor(const Integer& value, std::int64_t modulus) {
  Integer r = value % Integer(static_cast<long>(modulus));
  if (r < 0) r += static_cast<long>(modulus);
  return static_cast<std::int64_t>(r.get_si());
}

std::int64_t mod_floor(std::int64_t value, std::int64_t modulus) {
  const std::int64_t r = value % modulus;
  return r < 0 ? r + modulus : r;
}

Rational fractional_part(const Rational& value) {
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  Rational r = value - Rational(fl);
  r.canonicalize();
  return r;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return std::lcm(a, b);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t to_int64(const Integer& value) {
  if (!value.fits_slong_p()) throw std::overflow_error("integer exceeds 64-bit range: " + value.get_str());
  return static_cast<std::int64_t>(value.get_si());
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace abelian
