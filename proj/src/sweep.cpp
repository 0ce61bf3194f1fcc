#include "abelian/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <thread>

#include "abelian/errors.hpp"

namespace abelian {

void SweepConfig::validate() const {
  if (groups.empty()) throw SchemaError("sweep: at least one group is required");
  if (n == 0) throw SchemaError("sweep: n must be positive");
  if (coeff_min > coeff_max) throw SchemaError("sweep: empty coefficient range");
  if (lattice_min > lattice_max) throw SchemaError("sweep: empty lattice range");
  if (max_denominator < 1) throw SchemaError("sweep: max_denominator must be positive");
  if (max_support < 1) throw SchemaError("sweep: max_support must be positive");
  if (degenerate_fraction < 0 || planted_fraction < 0 || degenerate_fraction + planted_fraction > 1) {
    throw SchemaError("sweep: fractions must be nonnegative and sum to at most 1");
  }
  for (const auto& g : groups) {
    if (g.is_trivial()) throw SchemaError("sweep: trivial group");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Sampler {
 public:
  Sampler(const SweepConfig& config, const Group& group, std::uint64_t seed)
      : config_(config), group_(group), rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  double unit() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  std::vector<Integer> coefficients() {
    std::vector<Integer> out;
    for (std::size_t j = 0; j < config_.n; ++j) out.emplace_back(uniform(config_.coeff_min, config_.coeff_max));
    return out;
  }

  GroupElement element() {
    std::vector<Integer> lattice;
    for (std::size_t i = 0; i < group_.lattice_rank(); ++i) lattice.emplace_back(uniform(config_.lattice_min, config_.lattice_max));
    std::vector<std::int64_t> torsion = group_.torsion_at(uniform(0, group_.torsion_order() - 1));
    return group_.element(std::move(lattice), std::move(torsion));
  }

  std::size_t element_count() const {
    std::size_t count = static_cast<std::size_t>(group_.torsion_order());
    for (std::size_t i = 0; i < group_.lattice_rank(); ++i) {
      count *= static_cast<std::size_t>(config_.lattice_max - config_.lattice_min + 1);
    }
    return count;
  }

  /// Random pmf with exactly `size` atoms and weights of denominator <= max_denominator.
  Pmf pmf(std::size_t size) {
    size = std::min({size, element_count(), static_cast<std::size_t>(config_.max_denominator)});
    std::set<GroupElement> support;
    while (support.size() < size) support.insert(element());
    const auto q = uniform(static_cast<std::int64_t>(size), config_.max_denominator);
    std::set<std::int64_t> cuts;
    while (cuts.size() + 1 < size) cuts.insert(uniform(1, q - 1));
    std::vector<std::int64_t> bounds{0};
    bounds.insert(bounds.end(), cuts.begin(), cuts.end());
    bounds.push_back(q);
    std::vector<std::pair<GroupElement, Rational>> atoms;
    std::size_t k = 0;
    for (const auto& x : support) {
      atoms.emplace_back(x, make_rational(bounds[k + 1] - bounds[k], q));
      ++k;
    }
    return Pmf(group_, std::move(atoms));
  }

  /// Nondegenerate when possible, rejection-sampled for a nonvanishing characteristic function.
  Pmf nondegenerate_pmf() {
    const auto hi = static_cast<std::int64_t>(std::max<std::size_t>(2, config_.max_support));
    for (int attempt = 0; attempt < 64; ++attempt) {
      Pmf mu = pmf(static_cast<std::size_t>(uniform(2, hi)));
      if (nonvanishing(mu).nonvanishing) return mu;
    }
    return Pmf::degenerate(group_, element());
  }

 private:
  const SweepConfig& config_;
  const Group& group_;
  std::mt19937_64 rng_;
};

GroupElement combine(const Group& g, const std::vector<Integer>& r, const std::vector<GroupElement>& xs) {
  GroupElement out = g.zero();
  for (std::size_t j = 0; j < r.size(); ++j) out = g.add(out, g.scale(r[j], xs[j]));
  return out;
}

bool closed_form(const InstanceSpec& spec, const std::vector<GroupElement>& xs) {
  const Group& g = spec.group;
  const auto& s = spec.system;
  return combine(g, s.a, xs) == combine(g, s.c, xs) && combine(g, s.b, xs) == combine(g, s.d, xs);
}

}  // namespace

SweepRecord sweep_instance(const SweepConfig& config, std::size_t index) {
  const Group& group = config.groups[index % config.groups.size()];
  Sampler s(config, group, splitmix64(config.seed ^ splitmix64(index)));
  SweepRecord rec;
  rec.index = index;
  InstanceSpec& spec = rec.spec;
  spec.group = group;
  const double pick = s.unit();
  std::vector<GroupElement> atoms;

  if (pick < config.degenerate_fraction) {
    rec.kind = "degenerate";
    spec.system = {s.coefficients(), s.coefficients(), s.coefficients(), s.coefficients()};
    for (std::size_t j = 0; j < config.n; ++j) atoms.push_back(s.element());
  } else if (pick < config.degenerate_fraction + config.planted_fraction) {
    rec.kind = "planted";
    const auto a = s.coefficients();
    const auto b = s.coefficients();
    switch (s.uniform(0, 3)) {
      case 0:
        spec.system = {a, b, a, b};
        for (std::size_t j = 0; j < config.n; ++j) spec.dists.push_back(s.nondegenerate_pmf());
        break;
      case 1: {
        // Reversed coefficient order over identically distributed variables.
        spec.system = {a, b, {a.rbegin(), a.rend()}, {b.rbegin(), b.rend()}};
        const Pmf mu = s.nondegenerate_pmf();
        spec.dists.assign(config.n, mu);
        break;
      }
      case 2:
        if (config.n == 2) {
          const Pmf mu = s.nondegenerate_pmf();
          spec.system = {{1, 1}, {1, -1}, {1, 1}, {-1, 1}};
          spec.dists = {mu, mu};
          break;
        }
        [[fallthrough]];
      default: {
        // Degenerate tuple satisfying both linear constraints.
        for (std::size_t j = 0; j < config.n; ++j) atoms.push_back(s.element());
        spec.system = {a, b, a, b};
        for (int attempt = 0; attempt < 400; ++attempt) {
          FormSystem trial{a, b, s.coefficients(), s.coefficients()};
          InstanceSpec probe{group, trial, {}, Mode::Independent};
          if (closed_form(probe, atoms)) {
            spec.system = trial;
            break;
          }
        }
        break;
      }
    }
  } else {
    rec.kind = "random";
    spec.system = {s.coefficients(), s.coefficients(), s.coefficients(), s.coefficients()};
    for (std::size_t j = 0; j < config.n; ++j) spec.dists.push_back(s.nondegenerate_pmf());
  }

  if (!atoms.empty()) {
    for (const auto& x : atoms) spec.dists.push_back(Pmf::degenerate(group, x));
  }
  rec.verdict = verify_instance(spec);
  const bool all_degenerate = std::all_of(spec.dists.begin(), spec.dists.end(),
                                          [](const Pmf& mu) { return mu.support_size() == 1; });
  if (all_degenerate) {
    std::vector<GroupElement> xs;
    for (const auto& mu : spec.dists) xs.push_back(mu.atoms().begin()->first);
    rec.closed_form = closed_form(spec, xs);
    rec.closed_form_match = *rec.closed_form == rec.verdict.identically_distributed;
  }
  const bool all_nondegenerate = std::none_of(spec.dists.begin(), spec.dists.end(),
                                              [](const Pmf& mu) { return mu.support_size() == 1; });
  const bool all_nonvanishing = std::all_of(rec.verdict.nonvanishing.begin(), rec.verdict.nonvanishing.end(),
                                            [](const NonvanishingReport& r) { return r.nonvanishing; });
  rec.falsifying_candidate = all_nondegenerate && all_nonvanishing && rec.verdict.identically_distributed &&
                             rec.verdict.condition_set.size() == spec.system.size();
  return rec;
}

unsigned resolve_workers(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ABELIAN_WORKERS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

SweepSummary run_sweep(const SweepConfig& config, const std::function<void(const SweepRecord&)>& on_record) {
  config.validate();
  std::vector<SweepRecord> records(config.instances);
  std::atomic<std::size_t> next{0};
  const unsigned workers = std::min<unsigned>(resolve_workers(config.workers),
                                              static_cast<unsigned>(std::max<std::size_t>(1, config.instances)));
  std::vector<std::exception_ptr> errors(workers);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = next++; i < config.instances; i = next++) records[i] = sweep_instance(config, i);
    } catch (...) {
      errors[w] = std::current_exception();
      next = config.instances;
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepSummary sum;
  sum.seed = config.seed;
  std::map<std::string, std::size_t> per_group;
  for (const auto& rec : records) {
    if (on_record) on_record(rec);
    ++sum.instances;
    ++per_group[rec.spec.group.name()];
    switch (rec.verdict.status) {
      case Verdict::Status::Consistent:
        ++sum.consistent;
        break;
      case Verdict::Status::Inconsistent:
        ++sum.inconsistent;
        break;
      case Verdict::Status::Unverifiable:
        ++sum.unverifiable;
        break;
    }
    if (rec.verdict.identically_distributed) ++sum.identically_distributed;
    if (rec.verdict.hypotheses_hold) ++sum.hypotheses_hold;
    if (rec.verdict.counterexample_regime) ++sum.counterexample_regime;
    if (rec.closed_form) {
      ++sum.degenerate_tuples;
      if (*rec.closed_form) ++sum.degenerate_closed_form_true;
      if (!rec.closed_form_match) ++sum.degenerate_closed_form_mismatches;
    }
    if (rec.falsifying_candidate) ++sum.falsifying_candidates;
  }
  sum.per_group.assign(per_group.begin(), per_group.end());
  return sum;
}

}  // namespace abelian
