#pragma once

// Explicit instances where (L1, L2) and (L3, L4) are identically
// distributed yet the distributions are not degenerate, each returned
// with an exact certificate.

#include <vector>

#include "abelian/engine.hpp"
#include "abelian/linear_forms.hpp"

namespace abelian {

struct Certificate {
  bool identically_distributed = false;
  std::vector<std::size_t> condition_set;      // 0-based
  std::vector<Classification> classifications;  // per distribution
  std::vector<NonvanishingReport> nonvanishing;
  std::size_t pairs_compared = 0;  // atoms of the joint laws compared
  std::vector<std::string> notes;
};

struct Construction {
  InstanceSpec spec;
  Certificate certificate;
};

Certificate certify(const InstanceSpec& spec);

/// mu = m E_0 + (1 - m) E_x0 for x0 of prime order p and 1/2 < m < 1, with
/// a = b = c = (1, ..., 1), d = (1 - p, ..., 1 - p) over n >= 2 copies of mu.
Construction prop2_construction(const Group& group, const GroupElement& x0, const Rational& m, std::size_t n = 2);

/// On Z(2) or Z(3): L1 = xi_1 + ... + xi_{n-1}, L2 = xi_1 + ... + xi_{n-2} + xi_n,
/// L3 = L1, L4 = xi_n, the last two distributions Haar.
Construction haar_construction(const Group& group, std::size_t n, const std::vector<Pmf>& leading);

/// L1 = L3 = xi_1 + xi_2, L2 = -L4 = xi_1 - xi_2, both variables distributed as mu.
Construction identity_construction(const Pmf& mu);

}  // namespace abelian
