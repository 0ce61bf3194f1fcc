#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "abelian/group.hpp"
#include "abelian/linear_forms.hpp"
#include "abelian/pmf.hpp"

namespace abelian::testing {

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline GroupElement random_element(const Group& g, std::mt19937_64& rng, std::int64_t lattice_bound = 2) {
  std::vector<Integer> lattice;
  for (std::size_t i = 0; i < g.lattice_rank(); ++i) lattice.emplace_back(uniform_int(rng, -lattice_bound, lattice_bound));
  std::vector<std::int64_t> torsion;
  for (auto n : g.invariant_factors()) torsion.push_back(uniform_int(rng, 0, n - 1));
  return g.element(std::move(lattice), std::move(torsion));
}

/// Random positive integer weights on up to max_support distinct atoms.
inline Pmf random_pmf(const Group& g, std::mt19937_64& rng, std::size_t max_support = 3, std::int64_t max_weight = 6) {
  const auto k = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(max_support)));
  std::vector<GroupElement> support;
  for (std::size_t attempt = 0; support.size() < k && attempt < 64; ++attempt) {
    auto x = random_element(g, rng);
    if (std::find(support.begin(), support.end(), x) == support.end()) support.push_back(std::move(x));
  }
  std::vector<std::int64_t> w;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    w.push_back(uniform_int(rng, 1, max_weight));
    total += w.back();
  }
  std::vector<std::pair<GroupElement, Rational>> atoms;
  for (std::size_t i = 0; i < support.size(); ++i) atoms.emplace_back(support[i], make_rational(w[i], total));
  return Pmf(g, std::move(atoms));
}

inline std::vector<Integer> random_coefficients(std::mt19937_64& rng, std::size_t n, std::int64_t lo = -2,
                                                std::int64_t hi = 2) {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(uniform_int(rng, lo, hi));
  return out;
}

inline FormSystem random_system(std::mt19937_64& rng, std::size_t n, std::int64_t lo = -2, std::int64_t hi = 2) {
  return {random_coefficients(rng, n, lo, hi), random_coefficients(rng, n, lo, hi), random_coefficients(rng, n, lo, hi),
          random_coefficients(rng, n, lo, hi)};
}

inline InstanceSpec random_instance(const Group& g, std::mt19937_64& rng, std::size_t n, std::size_t max_support = 3) {
  InstanceSpec spec{g, random_system(rng, n), {}, Mode::Independent};
  for (std::size_t j = 0; j < n; ++j) spec.dists.push_back(random_pmf(g, rng, max_support));
  return spec;
}

inline std::vector<Integer> ints(std::initializer_list<long> xs) {
  std::vector<Integer> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline Pmf pmf(const Group& g, std::initializer_list<std::pair<std::int64_t, Rational>> atoms) {
  std::vector<std::pair<GroupElement, Rational>> out;
  for (const auto& [x, w] : atoms) out.emplace_back(g.element(x), w);
  return Pmf(g, std::move(out));
}

inline Rational q(long num, long den = 1) { return make_rational(num, den); }

}  // namespace abelian::testing
