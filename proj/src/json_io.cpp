#include "abelian/json_io.hpp"

#include <cctype>
#include <limits>

#include "abelian/errors.hpp"

namespace abelian::json_io {

namespace {

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::string trim(std::string s) {
  std::string out;
  for (const char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

std::vector<std::string> split_product(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'x' || s[i] == '*') {
      parts.push_back(cur);
      cur.clear();
    } else if (s.compare(i, 2, "\xc3\x97") == 0) {  // multiplication sign
      parts.push_back(cur);
      cur.clear();
      ++i;
    } else {
      cur += s[i];
    }
  }
  parts.push_back(cur);
  return parts;
}

std::int64_t parse_positive(const std::string& s, const std::string& whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    schema("cannot parse group \"" + whole + "\"");
  }
  try {
    return std::stoll(s);
  } catch (const std::exception&) {
    schema("cannot parse group \"" + whole + "\"");
  }
}

GroupInput make_input(std::size_t lattice_rank, const std::vector<std::int64_t>& orders) {
  return GroupInput{Group::from_cyclic(lattice_rank, orders), lattice_rank, orders.size()};
}

std::int64_t small_integer(const Json& j, const char* what) {
  const Integer v = read_integer(j);
  if (v < std::numeric_limits<long>::min() || v > std::numeric_limits<long>::max()) {
    schema(std::string(what) + " out of range");
  }
  return v.get_si();
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

Integer read_integer(const Json& j) {
  if (j.is_number_integer()) {
    return j.is_number_unsigned() ? Integer(std::to_string(j.get<std::uint64_t>())) : Integer(static_cast<long>(j.get<std::int64_t>()));
  }
  if (j.is_string()) return parse_integer(j.get<std::string>());
  schema("expected an integer, got " + j.dump());
}

Json write_integer(const Integer& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Rational read_rational(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(read_integer(j));
  if (j.is_object()) return make_rational(read_integer(field(j, "num")), read_integer(field(j, "den")));
  schema("expected a rational, got " + j.dump());
}

Json write_rational(const Rational& x) { return to_string(x); }

std::vector<Integer> read_integer_list(const Json& j) {
  if (!j.is_array()) schema("expected an array of integers, got " + j.dump());
  std::vector<Integer> out;
  for (const auto& e : j) out.push_back(read_integer(e));
  return out;
}

Json write_integer_list(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(write_integer(x));
  return out;
}

GroupInput read_group(const Json& j) {
  if (j.is_string()) {
    const std::string whole = j.get<std::string>();
    const std::string s = trim(whole);
    if (s.empty() || s == "0" || s == "{0}" || s == "trivial") return make_input(0, {});
    std::size_t lattice = 0;
    std::vector<std::int64_t> orders;
    for (const auto& part : split_product(s)) {
      if (part.size() < 1 || part[0] != 'Z') schema("cannot parse group \"" + whole + "\"");
      const std::string rest = part.substr(1);
      if (rest.empty()) {
        ++lattice;
      } else if (rest[0] == '^') {
        lattice += static_cast<std::size_t>(parse_positive(rest.substr(1), whole));
      } else if (rest[0] == '(' && rest.back() == ')') {
        orders.push_back(parse_positive(rest.substr(1, rest.size() - 2), whole));
      } else if (rest[0] == '_') {
        orders.push_back(parse_positive(rest.substr(1), whole));
      } else {
        orders.push_back(parse_positive(rest, whole));
      }
    }
    return make_input(lattice, orders);
  }
  if (!j.is_object()) schema("group must be an object or a string, got " + j.dump());
  std::size_t lattice = 0;
  if (j.contains("lattice_rank")) {
    const auto d = small_integer(j.at("lattice_rank"), "lattice_rank");
    if (d < 0) schema("lattice_rank must be nonnegative");
    lattice = static_cast<std::size_t>(d);
  }
  std::vector<std::int64_t> orders;
  if (j.contains("factors")) {
    if (!j.at("factors").is_array()) schema("factors must be an array");
    for (const auto& f : j.at("factors")) {
      const auto n = small_integer(f, "factor");
      if (n < 1) schema("factors must be positive");
      orders.push_back(n);
    }
  }
  return make_input(lattice, orders);
}

Json write_group(const Group& g) {
  return Json{{"lattice_rank", g.lattice_rank()}, {"factors", g.invariant_factors()}, {"name", g.name()}};
}

GroupElement GroupInput::element(const Json& j) const {
  std::vector<Integer> lattice;
  std::vector<Integer> torsion;
  if (j.is_number_integer() || j.is_string()) {
    if (input_lattice_rank + input_torsion_rank != 1) {
      schema("a bare number is only an element of Z or of a single cyclic group");
    }
    (input_lattice_rank == 1 ? lattice : torsion).push_back(read_integer(j));
  } else if (j.is_object()) {
    if (j.contains("lattice")) lattice = read_integer_list(j.at("lattice"));
    if (j.contains("torsion")) torsion = read_integer_list(j.at("torsion"));
  } else {
    schema("cannot read element " + j.dump());
  }
  if (lattice.size() != input_lattice_rank || torsion.size() != input_torsion_rank) {
    schema("element " + j.dump() + " does not match the group's coordinates");
  }
  return normalization.map(lattice, torsion);
}

Json write_element(const GroupElement& x) {
  return Json{{"lattice", write_integer_list(x.lattice)}, {"torsion", x.torsion}};
}

Json write_dual_point(const DualPoint& y) {
  Json lattice = Json::array();
  for (const auto& t : y.lattice) lattice.push_back(write_rational(t));
  return Json{{"torsion", y.torsion}, {"lattice", lattice}};
}

Pmf read_pmf(const Json& j, const GroupInput* context) {
  if (!j.is_object()) schema("distribution must be an object");
  GroupInput own;
  const GroupInput* gi = context;
  if (j.contains("group")) {
    own = read_group(j.at("group"));
    if (context && !(own.group() == context->group())) {
      schema("distribution group " + own.group().name() + " differs from " + context->group().name());
    }
    gi = &own;
  }
  if (!gi) schema("distribution has no group");
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array() || atoms.empty()) schema("atoms must be a nonempty array");
  std::vector<std::pair<GroupElement, Rational>> out;
  for (const auto& a : atoms) {
    Rational w;
    if (a.contains("weight")) {
      w = read_rational(a.at("weight"));
    } else {
      const Integer den = read_integer(field(a, "den"));
      if (den <= 0) schema("atom denominators must be positive");
      w = make_rational(read_integer(field(a, "num")), den);
    }
    out.emplace_back(gi->element(field(a, "element")), w);
  }
  return Pmf(gi->group(), std::move(out));
}

Json write_pmf(const Pmf& mu) {
  Json atoms = Json::array();
  for (const auto& [x, w] : mu.atoms()) {
    atoms.push_back(Json{{"element", write_element(x)},
                         {"num", write_integer(w.get_num())},
                         {"den", write_integer(w.get_den())}});
  }
  return Json{{"group", write_group(mu.group())}, {"atoms", atoms}};
}

Json write_subgroup(const Subgroup& h) {
  Json gens = Json::array();
  for (const auto& g : h.generators()) gens.push_back(write_element(g));
  Json elems = Json::array();
  for (const auto& g : h.elements()) elems.push_back(write_element(g));
  return Json{{"order", h.order()}, {"generators", gens}, {"elements", elems}};
}

Json write_classification(const Classification& c) {
  Json out{{"kind", to_string(c.kind)}};
  if (c.kind != Classification::Kind::Other) out["point"] = write_element(c.point);
  if (c.subgroup) out["subgroup"] = write_subgroup(*c.subgroup);
  return out;
}

FormSystem read_system(const Json& j) {
  FormSystem s{read_integer_list(field(j, "a")), read_integer_list(field(j, "b")), read_integer_list(field(j, "c")),
               read_integer_list(field(j, "d"))};
  s.validate();
  return s;
}

Json write_system(const FormSystem& s) {
  return Json{{"a", write_integer_list(s.a)},
              {"b", write_integer_list(s.b)},
              {"c", write_integer_list(s.c)},
              {"d", write_integer_list(s.d)}};
}

InstanceSpec read_instance(const Json& j) {
  if (!j.is_object()) schema("instance must be an object");
  const GroupInput gi = read_group(field(j, "group"));
  InstanceSpec spec{gi.group(), read_system(field(j, "system")), {}, Mode::Independent};
  const Json& dists = field(j, "dists");
  if (!dists.is_array()) schema("dists must be an array");
  for (const auto& d : dists) spec.dists.push_back(read_pmf(d, &gi));
  if (j.contains("mode")) {
    const auto m = j.at("mode").get<std::string>();
    if (m == "independent") {
      spec.mode = Mode::Independent;
    } else if (m == "q_independent") {
      spec.mode = Mode::QIndependent;
    } else {
      schema("unknown mode \"" + m + "\"");
    }
  }
  spec.validate();
  return spec;
}

Json write_instance(const InstanceSpec& spec) {
  Json dists = Json::array();
  for (const auto& mu : spec.dists) dists.push_back(write_pmf(mu));
  return Json{{"group", write_group(spec.group)},
              {"system", write_system(spec.system)},
              {"dists", dists},
              {"mode", to_string(spec.mode)}};
}

Json write_joint(const JointPmf& joint) {
  Json atoms = Json::array();
  for (const auto& [xy, w] : joint.atoms) {
    atoms.push_back(Json{{"first", write_element(xy.first)},
                         {"second", write_element(xy.second)},
                         {"num", write_integer(w.get_num())},
                         {"den", write_integer(w.get_den())}});
  }
  return Json{{"group", write_group(joint.group)}, {"atoms", atoms}};
}

Json write_nonvanishing(const NonvanishingReport& r) {
  Json out{{"nonvanishing", r.nonvanishing}, {"exhaustive", r.exhaustive}, {"points_checked", r.points_checked}};
  if (r.zero_at) out["zero_at"] = write_dual_point(*r.zero_at);
  return out;
}

namespace {

Json one_based(const std::vector<std::size_t>& xs) {
  Json out = Json::array();
  for (const auto x : xs) out.push_back(x + 1);
  return out;
}

Json write_collapse(const PolynomialCollapse& c) {
  return Json{{"check_group", c.check_group},
              {"degrees", c.degrees},
              {"dimensions", c.dimensions},
              {"exhaustive", c.exhaustive},
              {"collapses", c.collapses}};
}

}  // namespace

Json write_verdict(const Verdict& v) {
  Json nonvanishing = Json::array();
  Json detail = Json::array();
  for (const auto& r : v.nonvanishing) {
    nonvanishing.push_back(r.nonvanishing);
    detail.push_back(write_nonvanishing(r));
  }
  Json gc{{"kind", to_string(v.group_class.kind)}};
  if (v.group_class.kind == GroupClass::Kind::PGroup) gc["p"] = v.group_class.p;
  Json checks = Json::array();
  for (std::size_t k = 0; k < v.condition_set.size(); ++k) {
    Json c = write_classification(v.conclusion_checks[k]);
    c["index"] = v.condition_set[k] + 1;
    checks.push_back(c);
  }
  Json out{{"mode", to_string(v.mode)},
           {"group", write_group(v.group)},
           {"group_class", gc},
           {"hypotheses",
            {{"identically_distributed", v.identically_distributed},
             {"nonvanishing", nonvanishing},
             {"nonvanishing_exhaustive", v.nonvanishing_exhaustive},
             {"nonvanishing_detail", detail},
             {"hold", v.hypotheses_hold}}},
           {"condition_set", one_based(v.condition_set)},
           {"conclusion_checks", checks},
           {"conclusion_holds", v.conclusion_holds},
           {"theorem", v.theorem.empty() ? Json(nullptr) : Json(v.theorem)},
           {"theorem_asserted", v.theorem_asserted},
           {"consistent", v.consistent},
           {"status", to_string(v.status)},
           {"counterexample_regime", v.counterexample_regime},
           {"dropped_variables", one_based(v.dropped_variables)},
           {"notes", v.notes}};
  if (v.q_collapse) out["q_collapse"] = write_collapse(*v.q_collapse);
  return out;
}

Json write_charfn_table(const CharFnTable& table) {
  Json values = Json::array();
  for (const auto& e : table.entries) {
    values.push_back(Json{{"point", write_dual_point(e.point)},
                          {"re", e.value.real()},
                          {"im", e.value.imag()},
                          {"exact_zero", e.exact_zero}});
  }
  return Json{{"group", write_group(table.group)}, {"values", values}};
}

namespace {

Json write_step(const CascadeStep& step) {
  Json factors = Json::array();
  for (const auto& [fn, factor] : step.new_factors) {
    factors.push_back(Json{{"function", to_string(fn)},
                           {"shift", to_string(factor.shift)},
                           {"power", factor.power},
                           {"factor", to_string(factor)},
                           {"zero_shift", factor.is_zero_operator()}});
  }
  Json vanished = Json::array();
  for (const auto& fn : step.vanished) vanished.push_back(to_string(fn));
  return Json{{"removed_function", step.kill ? Json("q") : Json(to_string(step.removed))},
              {"symbol", step.symbol ? Json(to_string(*step.symbol)) : Json(nullptr)},
              {"substitution", {{"u", substitution_string("u", step.u_shift)}, {"v", substitution_string("v", step.v_shift)}}},
              {"kill", step.kill},
              {"power", step.power},
              {"new_factors", factors},
              {"vanished", vanished}};
}

}  // namespace

Json write_derivation(const DiffDerivation& d) {
  Json phi = Json::array();
  for (const auto& [a, b] : d.equation.phi) phi.push_back(Json::array({write_integer(a), write_integer(b)}));
  Json psi = Json::array();
  for (const auto& [c, dd] : d.equation.psi) psi.push_back(Json::array({write_integer(c), write_integer(dd)}));
  Json functions = Json::array();
  for (const auto& f : d.per_function) {
    Json steps = Json::array();
    for (const auto& s : f.steps) steps.push_back(write_step(s));
    Json factors = Json::array();
    for (const auto& factor : reading_order(f.final_term)) factors.push_back(to_string(factor));
    functions.push_back(Json{{"target", "phi" + std::to_string(f.target + 1)},
                             {"steps", steps},
                             {"operator", factors},
                             {"has_zero_shift", f.has_zero_shift},
                             {"result", to_string(f.result)}});
  }
  return Json{{"equation",
               {{"phi", phi},
                {"psi", psi},
                {"q_degree", d.equation.q_degree ? Json(*d.equation.q_degree) : Json(nullptr)},
                {"text", to_string(d.equation.initial())}}},
              {"removal_steps", d.removal_steps()},
              {"functions", functions},
              {"trace", proof_trace(d)}};
}

namespace {

Json write_check(const InequalityCheck& c) {
  return Json{{"left", c.left},
              {"right", c.right},
              {"value", write_integer(c.value)},
              {"nonzero", c.nonzero},
              {"admissible", c.admissible}};
}

Json write_row(const ReducedRow& r) {
  return Json{{"origin", to_string(r.origin)},
              {"A", write_integer(r.A)},
              {"B", write_integer(r.B)},
              {"members", one_based(r.members)}};
}

}  // namespace

Json write_reduced(const ReducedSystem& r) {
  Json out{{"outcome", to_string(r.outcome)}, {"condition_set", one_based(r.condition_set)}};
  if (r.outcome == ReducedSystem::Outcome::Case1) {
    Json rows = Json::array();
    for (const auto& row : r.rows) rows.push_back(write_row(row));
    Json residual = Json::array();
    for (const auto& row : r.residual) residual.push_back(write_row(row));
    Json det = Json::array();
    for (const auto& c : r.determinant_checks) det.push_back(write_check(c));
    Json br = Json::array();
    for (const auto& c : r.bracket_checks) br.push_back(write_check(c));
    out["A"] = write_integer(r.A);
    out["B"] = write_integer(r.B);
    out["rows"] = rows;
    out["residual"] = residual;
    out["absent"] = one_based(r.absent);
    out["C"] = write_integer_list(r.C);
    out["D"] = write_integer_list(r.D);
    out["determinant_checks"] = det;
    out["bracket_checks"] = br;
    out["determinants_hold"] = r.determinants_hold;
    out["brackets_hold"] = r.brackets_hold;
  } else if (r.outcome == ReducedSystem::Outcome::Case2) {
    out["collapse_coefficients"] = write_integer_list(r.collapse_coefficients);
    out["collapse_admissible"] = r.collapse_admissible;
    out["lhs_collapses"] = r.lhs_collapses;
  }
  return out;
}

Json write_certificate(const Certificate& c) {
  Json classes = Json::array();
  for (const auto& k : c.classifications) classes.push_back(write_classification(k));
  Json nv = Json::array();
  for (const auto& r : c.nonvanishing) nv.push_back(write_nonvanishing(r));
  return Json{{"identically_distributed", c.identically_distributed},
              {"condition_set", one_based(c.condition_set)},
              {"classifications", classes},
              {"nonvanishing", nv},
              {"pairs_compared", c.pairs_compared},
              {"notes", c.notes}};
}

Json write_construction(const Construction& c) {
  return Json{{"spec", write_instance(c.spec)}, {"certificate", write_certificate(c.certificate)}};
}

namespace {

Json write_blocks(const std::vector<FactorBlock>& blocks) {
  Json out = Json::array();
  for (const auto& b : blocks) {
    out.push_back(Json{{"range", b.range},
                       {"coefficient", b.coefficient},
                       {"u", write_integer(b.mult_u)},
                       {"v", write_integer(b.mult_v)}});
  }
  return out;
}

}  // namespace

Json write_special_case(const SpecialCaseReport& r) {
  return Json{{"kind", r.kind},
              {"group_family", r.group_family},
              {"p", r.p},
              {"equation", r.equation},
              {"lhs", write_blocks(r.lhs)},
              {"rhs", write_blocks(r.rhs)},
              {"substitution", r.substitution},
              {"reduced", write_blocks(r.reduced_lhs)},
              {"reduced_other_side", write_blocks(r.reduced_rhs)},
              {"result", r.result},
              {"check",
               {{"group", r.check_group},
                {"coefficients", write_integer_list(r.check_coefficients)},
                {"max_denominator", r.max_denominator},
                {"distributions", r.distributions},
                {"tuples_checked", r.tuples_checked},
                {"tuples_satisfying", r.tuples_satisfying},
                {"all_forced_degenerate", r.all_forced_degenerate},
                {"substitution_verified", r.substitution_verified}}}};
}

SweepConfig read_sweep_config(const Json& j) {
  if (!j.is_object()) schema("sweep config must be an object");
  SweepConfig c;
  auto get_int = [&](const char* key, std::int64_t& out) {
    if (j.contains(key)) out = small_integer(j.at(key), key);
  };
  if (j.contains("seed")) {
    const Integer s = read_integer(j.at("seed"));
    if (s < 0) schema("seed must be nonnegative");
    c.seed = std::stoull(s.get_str());
  }
  if (j.contains("instances")) {
    const auto v = small_integer(j.at("instances"), "instances");
    if (v < 0) schema("instances must be nonnegative");
    c.instances = static_cast<std::size_t>(v);
  }
  if (j.contains("groups")) {
    if (!j.at("groups").is_array()) schema("groups must be an array");
    c.groups.clear();
    for (const auto& g : j.at("groups")) c.groups.push_back(read_group(g).group());
  }
  if (j.contains("n")) {
    const auto v = small_integer(j.at("n"), "n");
    if (v < 1) schema("n must be positive");
    c.n = static_cast<std::size_t>(v);
  }
  if (j.contains("coefficients")) {
    const auto& r = j.at("coefficients");
    if (!r.is_array() || r.size() != 2) schema("coefficients must be [min, max]");
    c.coeff_min = small_integer(r[0], "coefficient");
    c.coeff_max = small_integer(r[1], "coefficient");
  }
  if (j.contains("lattice_support")) {
    const auto& r = j.at("lattice_support");
    if (!r.is_array() || r.size() != 2) schema("lattice_support must be [min, max]");
    c.lattice_min = small_integer(r[0], "lattice_support");
    c.lattice_max = small_integer(r[1], "lattice_support");
  }
  get_int("max_denominator", c.max_denominator);
  if (j.contains("max_support")) {
    const auto v = small_integer(j.at("max_support"), "max_support");
    if (v < 1) schema("max_support must be positive");
    c.max_support = static_cast<std::size_t>(v);
  }
  if (j.contains("degenerate_fraction")) c.degenerate_fraction = j.at("degenerate_fraction").get<double>();
  if (j.contains("planted_fraction")) c.planted_fraction = j.at("planted_fraction").get<double>();
  if (j.contains("workers")) {
    const auto v = small_integer(j.at("workers"), "workers");
    if (v < 0) schema("workers must be nonnegative");
    c.workers = static_cast<unsigned>(v);
  }
  c.validate();
  return c;
}

Json write_sweep_config(const SweepConfig& c) {
  Json groups = Json::array();
  for (const auto& g : c.groups) groups.push_back(g.name());
  return Json{{"seed", std::to_string(c.seed)},
              {"instances", c.instances},
              {"groups", groups},
              {"n", c.n},
              {"coefficients", {c.coeff_min, c.coeff_max}},
              {"lattice_support", {c.lattice_min, c.lattice_max}},
              {"max_denominator", c.max_denominator},
              {"max_support", c.max_support},
              {"degenerate_fraction", c.degenerate_fraction},
              {"planted_fraction", c.planted_fraction}};
}

Json write_sweep_record(const SweepRecord& r) {
  Json dists = Json::array();
  for (const auto& mu : r.spec.dists) {
    Json atoms = Json::array();
    for (const auto& [x, w] : mu.atoms()) atoms.push_back(Json{{"element", write_element(x)}, {"weight", to_string(w)}});
    dists.push_back(atoms);
  }
  Json out{{"index", r.index},
           {"kind", r.kind},
           {"group", r.spec.group.name()},
           {"system", write_system(r.spec.system)},
           {"dists", dists},
           {"identically_distributed", r.verdict.identically_distributed},
           {"hypotheses_hold", r.verdict.hypotheses_hold},
           {"condition_set", one_based(r.verdict.condition_set)},
           {"conclusion_holds", r.verdict.conclusion_holds},
           {"status", to_string(r.verdict.status)},
           {"counterexample_regime", r.verdict.counterexample_regime},
           {"falsifying_candidate", r.falsifying_candidate}};
  if (r.closed_form) {
    out["closed_form"] = *r.closed_form;
    out["closed_form_match"] = r.closed_form_match;
  }
  return out;
}

Json write_sweep_summary(const SweepSummary& s) {
  Json per_group = Json::object();
  for (const auto& [name, count] : s.per_group) per_group[name] = count;
  return Json{{"summary",
               {{"seed", std::to_string(s.seed)},
                {"instances", s.instances},
                {"consistent", s.consistent},
                {"inconsistent", s.inconsistent},
                {"unverifiable", s.unverifiable},
                {"identically_distributed", s.identically_distributed},
                {"hypotheses_hold", s.hypotheses_hold},
                {"counterexample_regime", s.counterexample_regime},
                {"degenerate_tuples", s.degenerate_tuples},
                {"degenerate_closed_form_true", s.degenerate_closed_form_true},
                {"degenerate_closed_form_mismatches", s.degenerate_closed_form_mismatches},
                {"falsifying_candidates", s.falsifying_candidates},
                {"per_group", per_group}}}};
}

}  // namespace abelian::json_io
