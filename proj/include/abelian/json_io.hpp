#pragma once

// JSON encoding of groups, elements, distributions, instances and every
// report produced by the library. Readers throw SchemaError on malformed
// input.

#include <json.hpp>

#include "abelian/counterexamples.hpp"
#include "abelian/elimination.hpp"
#include "abelian/engine.hpp"
#include "abelian/reduction.hpp"
#include "abelian/sweep.hpp"

namespace abelian::json_io {

using Json = nlohmann::json;

/// A group as written by the caller together with the map from the
/// caller's coordinates to canonical ones.
struct GroupInput {
  GroupNormalization normalization;
  std::size_t input_lattice_rank = 0;
  std::size_t input_torsion_rank = 0;

  const Group& group() const { return normalization.group; }
  GroupElement element(const Json& j) const;
};

/// Accepts {"lattice_rank": d, "factors": [...]} with arbitrary positive
/// factors, or shorthand strings such as "Z3", "Z(3)", "Z2xZ6", "Z", "Z^2xZ4", "0".
GroupInput read_group(const Json& j);
Json write_group(const Group& g);

Integer read_integer(const Json& j);
Json write_integer(const Integer& x);
Rational read_rational(const Json& j);
Json write_rational(const Rational& x);
std::vector<Integer> read_integer_list(const Json& j);
Json write_integer_list(const std::vector<Integer>& xs);

Json write_element(const GroupElement& x);
Json write_dual_point(const DualPoint& y);

/// {"group": ..., "atoms": [{"element": ..., "num": p, "den": q}]}. When
/// `context` is given the "group" key is optional and must match it.
Pmf read_pmf(const Json& j, const GroupInput* context = nullptr);
Json write_pmf(const Pmf& mu);

Json write_subgroup(const Subgroup& h);
Json write_classification(const Classification& c);

FormSystem read_system(const Json& j);
Json write_system(const FormSystem& s);

InstanceSpec read_instance(const Json& j);
Json write_instance(const InstanceSpec& spec);

Json write_joint(const JointPmf& joint);
Json write_nonvanishing(const NonvanishingReport& r);
Json write_verdict(const Verdict& v);
Json write_charfn_table(const CharFnTable& table);
Json write_derivation(const DiffDerivation& d);
Json write_reduced(const ReducedSystem& r);
Json write_certificate(const Certificate& c);
Json write_construction(const Construction& c);
Json write_special_case(const SpecialCaseReport& r);

SweepConfig read_sweep_config(const Json& j);
Json write_sweep_config(const SweepConfig& c);
Json write_sweep_record(const SweepRecord& r);
Json write_sweep_summary(const SweepSummary& s);

/// Parses text, mapping parse errors to SchemaError.
Json parse(const std::string& text);

}  // namespace abelian::json_io
