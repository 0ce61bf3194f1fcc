#pragma once

// Seeded randomized sweep of verify_instance over small groups.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "abelian/engine.hpp"

namespace abelian {

struct SweepConfig {
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  std::size_t instances = 2400;
  std::vector<Group> groups{Group::cyclic(3), Group::cyclic(5), Group::lattice(1)};
  std::size_t n = 2;
  std::int64_t coeff_min = -2, coeff_max = 2;
  std::int64_t max_denominator = 12;
  std::int64_t lattice_min = -2, lattice_max = 2;  // support range per lattice coordinate
  std::size_t max_support = 3;
  double degenerate_fraction = 0.25;
  double planted_fraction = 0.25;
  unsigned workers = 0;  // 0: ABELIAN_WORKERS or hardware concurrency

  void validate() const;
};

struct SweepRecord {
  std::size_t index = 0;
  std::string kind;  // random | degenerate | planted
  InstanceSpec spec;
  Verdict verdict;
  std::optional<bool> closed_form;  // degenerate tuples: sum a x = sum c x and sum b x = sum d x
  bool closed_form_match = true;
  bool falsifying_candidate = false;  // nondegenerate, nonvanishing, full condition set, identically distributed
};

struct SweepSummary {
  std::uint64_t seed = 0;
  std::size_t instances = 0;
  std::size_t consistent = 0, inconsistent = 0, unverifiable = 0;
  std::size_t identically_distributed = 0;
  std::size_t hypotheses_hold = 0;
  std::size_t counterexample_regime = 0;
  std::size_t degenerate_tuples = 0;
  std::size_t degenerate_closed_form_true = 0;
  std::size_t degenerate_closed_form_mismatches = 0;
  std::size_t falsifying_candidates = 0;
  std::vector<std::pair<std::string, std::size_t>> per_group;
};

/// Deterministic in (config, index).
SweepRecord sweep_instance(const SweepConfig& config, std::size_t index);

/// Runs every instance, calling on_record in index order.
SweepSummary run_sweep(const SweepConfig& config, const std::function<void(const SweepRecord&)>& on_record = {});

unsigned resolve_workers(unsigned requested);

}  // namespace abelian
