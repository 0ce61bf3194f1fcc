#include "abelian/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace abelian {
namespace {

using Poly = std::vector<Integer>;

// Exact division of a by a monic b.
Poly divide_monic(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  if (a.size() < b.size()) return {0};
  Poly q(a.size() - db, 0);
  for (std::size_t i = a.size(); i-- > db;) {
    const Integer c = a[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t k = 0; k <= db; ++k) a[i - db + k] -= c * b[k];
  }
  return q;
}

}  // namespace

const std::vector<Integer>& cyclotomic_polynomial(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
  static std::mutex mutex;
  static std::map<std::int64_t, std::unique_ptr<Poly>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(n); it != cache.end()) return *it->second;
  }
  Poly p(static_cast<std::size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<std::size_t>(n)] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_monic(std::move(p), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::make_unique<Poly>(std::move(p)));
  return *it->second;
}

Cyclotomic::Cyclotomic() : conductor_(1), coeffs_(1, 0) {}

Cyclotomic::Cyclotomic(std::int64_t conductor, std::vector<Rational> coeffs)
    : conductor_(conductor), coeffs_(std::move(coeffs)) {}

Cyclotomic Cyclotomic::rational(const Rational& value) { return Cyclotomic(1, {value}); }

Cyclotomic Cyclotomic::root(const Rational& phase) {
  const Rational t = fractional_part(phase);
  const std::int64_t n = to_int64(t.get_den());
  std::vector<Rational> c(static_cast<std::size_t>(n), 0);
  c[static_cast<std::size_t>(to_int64(t.get_num()))] = 1;
  return Cyclotomic(n, std::move(c));
}

Cyclotomic Cyclotomic::lifted(std::int64_t multiple) const {
  if (multiple == conductor_) return *this;
  if (multiple % conductor_ != 0) throw std::invalid_argument("lift target must be a multiple of the conductor");
  const std::int64_t step = multiple / conductor_;
  std::vector<Rational> c(static_cast<std::size_t>(multiple), 0);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k * static_cast<std::size_t>(step)] = coeffs_[k];
  return Cyclotomic(multiple, std::move(c));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& other) const {
  Cyclotomic out = *this;
  out += other;
  return out;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  const std::int64_t n = lcm64(conductor_, other.conductor_);
  if (n != conductor_) *this = lifted(n);
  const Cyclotomic rhs = other.lifted(n);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Cyclotomic Cyclotomic::scaled(const Rational& factor) const {
  Cyclotomic out = *this;
  for (auto& c : out.coeffs_) c *= factor;
  return out;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& other) const { return *this + other.scaled(-1); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& other) const {
  const std::int64_t n = lcm64(conductor_, other.conductor_);
  const Cyclotomic x = lifted(n);
  const Cyclotomic y = other.lifted(n);
  std::vector<Rational> c(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    if (x.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < y.coeffs_.size(); ++j) {
      if (y.coeffs_[j] == 0) continue;
      c[(i + j) % static_cast<std::size_t>(n)] += x.coeffs_[i] * y.coeffs_[j];
    }
  }
  return Cyclotomic(n, std::move(c));
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  *this = *this * other;
  return *this;
}

Cyclotomic Cyclotomic::conj() const {
  const auto n = static_cast<std::size_t>(conductor_);
  std::vector<Rational> c(n, 0);
  for (std::size_t k = 0; k < n; ++k) c[(n - k) % n] = coeffs_[k];
  return Cyclotomic(conductor_, std::move(c));
}

std::vector<Rational> Cyclotomic::reduced() const {
  const auto& phi = cyclotomic_polynomial(conductor_);
  const std::size_t deg = phi.size() - 1;
  std::vector<Rational> r = coeffs_;
  for (std::size_t i = r.size(); i-- > deg;) {
    if (r[i] == 0) continue;
    const Rational c = r[i];
    for (std::size_t k = 0; k <= deg; ++k) r[i - deg + k] -= c * Rational(phi[k]);
  }
  r.resize(std::min(deg, r.size()));
  return r;
}

bool Cyclotomic::is_zero() const {
  const auto r = reduced();
  return std::all_of(r.begin(), r.end(), [](const Rational& c) { return c == 0; });
}

std::optional<Rational> Cyclotomic::as_rational() const {
  const auto r = reduced();
  if (r.empty()) return Rational(0);
  for (std::size_t k = 1; k < r.size(); ++k) {
    if (r[k] != 0) return std::nullopt;
  }
  return r[0];
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(conductor_);
    z += coeffs_[k].get_d() * std::polar(1.0, angle);
  }
  return z;
}

}  // namespace abelian
