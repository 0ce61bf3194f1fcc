// abelcheck: command-line front end for the abelian library.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "abelian/counterexamples.hpp"
#include "abelian/elimination.hpp"
#include "abelian/engine.hpp"
#include "abelian/errors.hpp"
#include "abelian/json_io.hpp"
#include "abelian/reduction.hpp"
#include "abelian/sweep.hpp"

namespace {

using namespace abelian;
using json_io::Json;

constexpr int kExitSchema = 64;
constexpr int kExitPrecondition = 65;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

/// Reads a literal argument, "@path", or "-" for standard input.
std::string slurp(const std::string& arg) {
  if (arg == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw SchemaError("cannot open " + arg.substr(1));
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  }
  return arg;
}

struct Inputs {
  Json hashes = Json::object();

  Json load(const std::string& name, const std::string& arg) {
    const std::string text = slurp(arg);
    hashes[name] = sha256_hex(text);
    return json_io::parse(text);
  }
  /// Group arguments may be shorthand strings rather than JSON.
  Json load_group(const std::string& name, const std::string& arg) {
    const std::string text = slurp(arg);
    hashes[name] = sha256_hex(text);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '"')) return json_io::parse(text);
    return Json(text);
  }
};

void emit(const std::string& command, const Inputs& inputs, const Json& result) {
  const Json report{{"tool", "abelcheck"},
                    {"version", ABELIAN_VERSION},
                    {"command", command},
                    {"input_sha256", inputs.hashes},
                    {"result", result}};
  std::cout << report.dump(2) << "\n";
}

/// Accepts a bare instance, {"spec": ...}, or a report whose result holds one.
Json unwrap_instance(Json j) {
  if (j.is_object() && j.contains("result")) j = j.at("result");
  if (j.is_object() && j.contains("spec")) j = j.at("spec");
  return j;
}

std::vector<Integer> parse_list(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_integer(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for characterizations of distributions by four linear forms on abelian groups"};
  app.set_version_flag("--version", std::string("abelcheck ") + ABELIAN_VERSION);
  app.require_subcommand(1);
  int exit_status = 0;
  Inputs inputs;

  // admissible
  std::string adm_group, adm_value;
  auto* adm = app.add_subcommand("admissible", "Is multiplication by A a nonzero map on GROUP");
  adm->add_option("GROUP", adm_group, "group JSON or shorthand such as Z3, Z2xZ6, Z^2")->required();
  adm->add_option("A", adm_value, "integer")->required();
  adm->callback([&] {
    const auto g = json_io::read_group(inputs.load_group("group", adm_group)).group();
    std::cout << (admissible(g, parse_integer(adm_value)) ? "true" : "false") << "\n";
  });

  // classify
  std::string pmf_arg;
  auto* cls = app.add_subcommand("classify", "Classify a distribution as degenerate, shifted Haar, or other");
  cls->add_option("PMF", pmf_arg, "distribution JSON, @file or -")->required();
  cls->callback([&] {
    const Pmf mu = json_io::read_pmf(inputs.load("pmf", pmf_arg));
    emit("classify", inputs,
         Json{{"classification", json_io::write_classification(classify(mu))}, {"support_size", mu.support_size()}});
  });

  // charfn
  std::int64_t grid = kDefaultTorusGrid;
  auto* cf = app.add_subcommand("charfn", "Tabulate the characteristic function over the dual");
  cf->add_option("PMF", pmf_arg, "distribution JSON, @file or -")->required();
  cf->add_option("--grid", grid, "torus points per lattice dimension")->check(CLI::PositiveNumber);
  cf->callback([&] {
    const Pmf mu = json_io::read_pmf(inputs.load("pmf", pmf_arg));
    Json result = json_io::write_charfn_table(char_fn_table(mu, grid));
    result["nonvanishing"] = json_io::write_nonvanishing(nonvanishing(mu, grid));
    emit("charfn", inputs, result);
  });

  // joint
  std::string spec_arg = "-";
  auto* joint = app.add_subcommand("joint", "Exact joint laws of (L1, L2) and (L3, L4)");
  joint->add_option("SPEC", spec_arg, "instance JSON, @file or - (default)");
  joint->callback([&] {
    const InstanceSpec spec = json_io::read_instance(unwrap_instance(inputs.load("spec", spec_arg)));
    const auto& s = spec.system;
    const JointPmf first = joint_pmf(spec.group, s.a, s.b, spec.dists);
    const JointPmf second = joint_pmf(spec.group, s.c, s.d, spec.dists);
    emit("joint", inputs,
         Json{{"first", json_io::write_joint(first)},
              {"second", json_io::write_joint(second)},
              {"identically_distributed", first == second}});
  });

  // check
  bool with_residual = false;
  auto* check = app.add_subcommand("check", "Decide whether (L1, L2) and (L3, L4) are identically distributed");
  check->add_option("SPEC", spec_arg, "instance JSON, @file or - (default)");
  check->add_flag("--residual", with_residual, "also scan the characteristic-function equation over the dual square");
  check->add_option("--grid", grid, "torus points per lattice dimension")->check(CLI::PositiveNumber);
  check->callback([&] {
    const InstanceSpec spec = json_io::read_instance(unwrap_instance(inputs.load("spec", spec_arg)));
    Json result{{"identically_distributed", identically_distributed(spec)}};
    if (with_residual) {
      const ResidualScan scan = scan_equation_residual(spec, grid);
      result["residual"] = Json{{"exact_zero", scan.exact_zero},
                                {"max_abs", scan.max_abs},
                                {"pairs", scan.pairs},
                                {"exhaustive", scan.exhaustive}};
    }
    emit("check", inputs, result);
  });

  // verify
  bool strict_nonvanishing = false;
  unsigned q_degree_max = 3;
  auto* verify = app.add_subcommand("verify", "Hypothesis and conclusion verdict for an instance");
  verify->add_option("SPEC", spec_arg, "instance JSON, @file or - (default)");
  verify->add_flag("--require-nonvanishing", strict_nonvanishing,
                   "judge lattice groups with the nonvanishing hypothesis (sampled, may be unverifiable)");
  verify->add_option("--grid", grid, "torus points per lattice dimension")->check(CLI::PositiveNumber);
  verify->add_option("--max-degree", q_degree_max, "polynomial degrees checked in q_independent mode");
  verify->callback([&] {
    const InstanceSpec spec = json_io::read_instance(unwrap_instance(inputs.load("spec", spec_arg)));
    VerifyOptions vo;
    vo.lattice_without_nonvanishing = !strict_nonvanishing;
    vo.torus_grid = grid;
    Verdict v;
    if (spec.mode == Mode::QIndependent) {
      QModeOptions qo;
      qo.max_degree = q_degree_max;
      qo.verify = vo;
      v = q_mode_check(spec, qo);
    } else {
      v = verify_instance(spec, vo);
    }
    emit("verify", inputs, json_io::write_verdict(v));
    for (const auto& note : v.notes) std::cerr << "note: " << note << "\n";
    exit_status = exit_code(v.status);
  });

  // eliminate
  std::string system_arg, a_arg, b_arg, c_arg, d_arg;
  std::size_t elim_m = 0;
  int elim_q = -1;
  bool trace_only = false;
  auto* elim = app.add_subcommand("eliminate", "Symbolic finite-difference elimination for a form system");
  elim->add_option("SYSTEM", system_arg, "system JSON {a, b, c, d}, @file or -");
  elim->add_option("--a", a_arg, "comma-separated a");
  elim->add_option("--b", b_arg, "comma-separated b");
  elim->add_option("--c", c_arg, "comma-separated c");
  elim->add_option("--d", d_arg, "comma-separated d");
  elim->add_option("--m", elim_m, "number of phi functions (default n)");
  elim->add_option("--q-degree", elim_q, "degree bound of the polynomial q (omit for q = 0)");
  elim->add_flag("--trace", trace_only, "print the proof trace as text");
  elim->callback([&] {
    FormSystem s;
    if (!system_arg.empty()) {
      s = json_io::read_system(inputs.load("system", system_arg));
    } else {
      if (a_arg.empty() || b_arg.empty() || c_arg.empty() || d_arg.empty()) {
        throw SchemaError("eliminate needs SYSTEM or all of --a --b --c --d");
      }
      s = {parse_list(a_arg), parse_list(b_arg), parse_list(c_arg), parse_list(d_arg)};
      inputs.hashes["system"] = sha256_hex(a_arg + ";" + b_arg + ";" + c_arg + ";" + d_arg);
      s.validate();
    }
    const std::size_t m = elim_m == 0 ? s.size() : elim_m;
    const std::optional<unsigned> q = elim_q < 0 ? std::nullopt : std::optional<unsigned>(static_cast<unsigned>(elim_q));
    const DiffDerivation d = eliminate(s, m, q);
    if (trace_only) {
      std::cout << proof_trace(d);
      return;
    }
    emit("eliminate", inputs, json_io::write_derivation(d));
  });

  // reduce
  std::string group_arg;
  auto* red = app.add_subcommand("reduce", "Coefficient reduction on the condition set");
  red->add_option("SYSTEM", system_arg, "system JSON, @file or -")->required();
  red->add_option("GROUP", group_arg, "group JSON or shorthand")->required();
  red->callback([&] {
    const FormSystem s = json_io::read_system(inputs.load("system", system_arg));
    const Group g = json_io::read_group(inputs.load_group("group", group_arg)).group();
    emit("reduce", inputs, json_io::write_reduced(reduce_coefficients(s, g)));
  });

  // counterexample
  auto* ce = app.add_subcommand("counterexample", "Build a certified instance");
  ce->require_subcommand(1);
  std::string ce_group = "Z3", ce_m = "3/5", ce_x0 = "1", ce_leading, ce_pmf;
  std::size_t ce_n = 2;
  auto* prop2 = ce->add_subcommand("prop2", "mu = m E_0 + (1 - m) E_x0 with a = b = c = 1, d = 1 - p");
  prop2->add_option("--group", ce_group, "group JSON or shorthand");
  prop2->add_option("--m", ce_m, "weight at 0, in (1/2, 1)");
  prop2->add_option("--x0", ce_x0, "element of prime order (number or element JSON)");
  prop2->add_option("--n", ce_n, "number of variables (>= 2)");
  prop2->callback([&] {
    const auto gi = json_io::read_group(inputs.load_group("group", ce_group));
    const Json x0 = json_io::parse(ce_x0);
    inputs.hashes["x0"] = sha256_hex(ce_x0);
    inputs.hashes["m"] = sha256_hex(ce_m);
    const Construction c = prop2_construction(gi.group(), gi.element(x0), parse_rational(ce_m), ce_n);
    emit("counterexample prop2", inputs, json_io::write_construction(c));
  });
  std::size_t haar_n = 3;
  auto* haar = ce->add_subcommand("haar", "Haar witnesses on Z(2) or Z(3)");
  haar->add_option("--group", ce_group, "Z2 or Z3");
  haar->add_option("--n", haar_n, "number of variables (>= 3)");
  haar->add_option("--leading", ce_leading, "JSON array of n - 2 distributions (default: 3/4 at 0, 1/4 at 1)");
  haar->callback([&] {
    const auto gi = json_io::read_group(inputs.load_group("group", ce_group));
    std::vector<Pmf> leading;
    if (ce_leading.empty()) {
      const Pmf mu(gi.group(), {{gi.group().zero(), Rational(3, 4)}, {gi.group().element(1), Rational(1, 4)}});
      leading.assign(haar_n >= 2 ? haar_n - 2 : 0, mu);
    } else {
      const Json arr = inputs.load("leading", ce_leading);
      if (!arr.is_array()) throw SchemaError("--leading must be a JSON array");
      for (const auto& j : arr) leading.push_back(json_io::read_pmf(j, &gi));
    }
    emit("counterexample haar", inputs, json_io::write_construction(haar_construction(gi.group(), haar_n, leading)));
  });
  auto* ident = ce->add_subcommand("identity", "L1 = L3 = xi_1 + xi_2, L2 = -L4 = xi_1 - xi_2");
  ident->add_option("--pmf", ce_pmf, "distribution JSON, @file or -")->required();
  ident->callback([&] {
    const Pmf mu = json_io::read_pmf(inputs.load("pmf", ce_pmf));
    emit("counterexample identity", inputs, json_io::write_construction(identity_construction(mu)));
  });

  // sweep
  std::string sweep_config;
  std::optional<std::uint64_t> sweep_seed;
  std::optional<std::size_t> sweep_instances;
  bool summary_only = false;
  auto* sweep = app.add_subcommand("sweep", "Seeded randomized consistency sweep (JSON lines)");
  sweep->add_option("CONFIG", sweep_config, "config JSON, @file or -");
  sweep->add_option("--seed", sweep_seed, "64-bit seed (overrides the config)");
  sweep->add_option("--instances", sweep_instances, "instance count (overrides the config)");
  sweep->add_flag("--summary-only", summary_only, "print only the summary line");
  sweep->callback([&] {
    SweepConfig cfg = sweep_config.empty() ? SweepConfig{} : json_io::read_sweep_config(inputs.load("config", sweep_config));
    if (sweep_seed) cfg.seed = *sweep_seed;
    if (sweep_instances) cfg.instances = *sweep_instances;
    const Json header{{"tool", "abelcheck"},
                      {"version", ABELIAN_VERSION},
                      {"command", "sweep"},
                      {"input_sha256", inputs.hashes},
                      {"config", json_io::write_sweep_config(cfg)}};
    std::cout << header.dump() << "\n";
    const SweepSummary sum = run_sweep(cfg, [&](const SweepRecord& r) {
      if (!summary_only) std::cout << json_io::write_sweep_record(r).dump() << "\n";
    });
    std::cout << json_io::write_sweep_summary(sum).dump() << "\n";
    if (sum.inconsistent > 0) {
      exit_status = 2;
    } else if (sum.unverifiable > 0) {
      exit_status = 3;
    }
  });

  // special-case
  std::string sc_kind;
  std::int64_t sc_den = 6;
  auto* sc = app.add_subcommand("special-case", "Substitution derivations for the X_(3) and X_(2) special cases");
  sc->add_option("KIND", sc_kind, "x3_heyde or x2_darmois")->required()->check(CLI::IsMember({"x3_heyde", "x2_darmois"}));
  sc->add_option("--max-den", sc_den, "largest weight denominator in the exhaustive check")->check(CLI::PositiveNumber);
  sc->callback([&] {
    const auto kind = sc_kind == "x3_heyde" ? SpecialCase::X3Heyde : SpecialCase::X2Darmois;
    emit("special-case", inputs, json_io::write_special_case(special_case_derivations(kind, sc_den)));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitSchema;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSchema;
  }
  return exit_status;
}
