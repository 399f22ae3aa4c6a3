// Command-line front end: validate, derive, generators, matrices, bpf, verify.
// Exit codes: 0 ok, 1 domain violation or failed verification, 2 parse error,
// 3 budget exceeded.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>

#include "mqinv/errors.hpp"
#include "mqinv/generators.hpp"
#include "mqinv/io.hpp"
#include "mqinv/tableau.hpp"
#include "mqinv/verify.hpp"

using namespace mqinv;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kParse = 2;
constexpr int kBudget = 3;

struct RunConfig {
  std::string field = "Q";
  std::uint64_t seed = 1;
  int trials = 20;
  bool reflect = false;
  GeneratorBounds bounds;
  std::string out;
};

Field parse_field(const std::string& text) {
  try {
    return Field::parse(text);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Json config_json(const RunConfig& c, bool with_bounds) {
  Json j;
  j["field"] = parse_field(c.field).name();
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["force_reflection"] = c.reflect;
  if (with_bounds) j["bounds"] = to_json(c.bounds);
  return j;
}

VerifyConfig verify_config(const RunConfig& c) {
  if (c.trials < 1) throw std::invalid_argument("--trials must be positive");
  VerifyConfig v;
  v.trials = c.trials;
  v.seed = c.seed;
  v.field = parse_field(c.field);
  v.sampler.force_reflection = c.reflect;
  return v;
}

void emit(const RunConfig& c, const Json& report) {
  const std::string text = report.dump(2) + "\n";
  if (!c.out.empty()) write_output(c.out, text);
}

std::string summary_line(const VerificationReport& r) {
  std::ostringstream s;
  s << "verification: " << (r.passed() ? "passed" : "FAILED") << " (" << r.checks.size() << " checks x " << r.trials
    << " trials over " << r.field.name() << ", seed " << r.seed << ", " << r.failures.size() << " failures";
  if (!r.errors.empty()) s << ", " << r.errors.size() << " sampling errors";
  s << ")";
  return s.str();
}

int cmd_validate(const std::string& file, const RunConfig& c) {
  const MixedQuiverSetting s = setting_from_json(read_json_file(file));
  const auto violations = validate(s, parse_field(c.field).characteristic());
  Json report;
  report["command"] = "validate";
  report["valid"] = violations.empty();
  Json list = Json::array();
  for (const auto& v : violations) {
    list.push_back({{"condition", v.condition}, {"location", v.location}, {"message", v.message}});
    std::cout << v.to_string() << "\n";
  }
  report["violations"] = list;
  if (violations.empty()) std::cout << "valid\n";
  emit(c, report);
  return violations.empty() ? kOk : kDomain;
}

int cmd_derive(const std::string& which, const std::string& file, const RunConfig& c) {
  const MixedQuiverSetting s = setting_from_json(read_json_file(file));
  DerivedSetting d;
  if (which == "double") {
    d = double_setting(s);
  } else if (which == "loop") {
    d = loopify(s);
  } else if (which == "reduce") {
    d = reduce(s);
  } else {
    d = normalize_derivation(s);
  }
  require_valid(d.setting);
  const std::string text = to_json(d).dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_output(c.out, text);
    std::cout << which << ": " << d.setting.quiver.arrows.size() << " arrows, " << d.setting.vertex_count()
              << " vertices\n";
  }
  return kOk;
}

Json family_json(const GeneratorFamily& f) {
  Json list = Json::array();
  std::size_t duplicates = 0;
  std::map<std::string, std::size_t> per_kind;
  for (std::size_t i = 0; i < f.generators.size(); ++i) {
    list.push_back(to_json(f.generators[i], i));
    ++per_kind[to_string(f.generators[i].kind)];
    if (f.generators[i].duplicate_of) ++duplicates;
  }
  Json counts;
  for (const char* k : {"sigma", "bpf", "pfaffian"}) counts[k] = per_kind[k];
  counts["duplicates"] = duplicates;
  counts["dropped_zero"] = f.dropped_zero;
  Json j;
  j["counts"] = counts;
  j["generators"] = list;
  return j;
}

int report_family(const std::string& command, const GeneratorFamily& f, const RunConfig& c, Json header) {
  const VerificationReport r = verify_family(f, verify_config(c), true);
  Json report;
  report["command"] = command;
  report["config"] = config_json(c, true);
  for (auto& [k, v] : header.items()) report[k] = v;
  report["derived"] = to_json(f.derived);
  const Json body = family_json(f);
  report["counts"] = body["counts"];
  report["generators"] = body["generators"];
  report["verification"] = r.to_json();
  const Json& counts = body["counts"];
  std::cout << f.generators.size() << " generators (" << counts["sigma"] << " sigma, " << counts["bpf"] << " bpf, "
            << counts["pfaffian"] << " pfaffian; " << counts["duplicates"] << " flagged duplicates, "
            << f.dropped_zero << " zero candidates dropped)\n";
  for (const auto& g : f.generators) {
    std::cout << "  " << g.label();
    if (g.duplicate_of) std::cout << "  [duplicate of " << *g.duplicate_of << "]";
    std::cout << "\n";
  }
  std::cout << summary_line(r) << "\n";
  emit(c, report);
  return r.passed() ? kOk : kDomain;
}

int cmd_generators(const std::string& file, const std::string& family, const RunConfig& c) {
  const MixedQuiverSetting s = setting_from_json(read_json_file(file));
  require_valid(s, parse_field(c.field).characteristic());
  GeneratorFamily f;
  if (family == "sigma") {
    f = theorem1_sigma_generators(s, c.bounds);
  } else if (family == "bpf") {
    f = theorem1_bpf_generators(s, c.bounds);
  } else {
    f = theorem1_generators(s, c.bounds);
  }
  Json header;
  header["family"] = family;
  header["setting"] = to_json(s);
  return report_family("generators", f, c, header);
}

int cmd_matrices(int n, int d, const std::string& group, const RunConfig& c) {
  Group g;
  try {
    g = parse_group(group);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const GeneratorFamily f = corollary3_generators(n, d, g, c.bounds.max_path_len, c.bounds);
  Json header;
  header["n"] = n;
  header["d"] = d;
  header["group"] = to_string(g);
  return report_family("matrices", f, c, header);
}

int cmd_bpf(const std::string& file, const RunConfig& c) {
  const Json j = read_json_file(file);
  const Field field = parse_field(c.field);
  const Tableau t = tableau_from_json(j);
  const auto problems = tableau_violations(t);
  if (!problems.empty()) {
    for (const auto& p : problems) std::cerr << "tableau: " << p << "\n";
    return kDomain;
  }
  const std::vector<PolyMatrix> ys = tableau_substitution(j, t, field);
  const Polynomial value = bpf(t, ys);
  const int sign = lemma1_check(t, ys);
  std::cout << value.to_string() << "\n";
  std::cout << "lemma1 sign: " << (sign > 0 ? "+1" : "-1") << "\n";
  Json report;
  report["command"] = "bpf";
  report["config"] = {{"field", field.name()}};
  report["tableau"] = to_json(t);
  report["c_T"] = c_T(t).get_str();
  report["polynomial"] = value.to_string();
  report["lemma1_sign"] = sign;
  emit(c, report);
  return kOk;
}

std::vector<std::string> polynomial_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    out.push_back(line.substr(first, last - first + 1));
  }
  return out;
}

int cmd_verify(const std::string& setting_file, const std::string& input, const RunConfig& c) {
  const MixedQuiverSetting s = setting_from_json(read_json_file(setting_file));
  require_valid(s, parse_field(c.field).characteristic());
  const VerifyConfig vc = verify_config(c);
  const std::string text = read_text_file(input);
  VerificationReport r;
  r.trials = vc.trials;
  r.seed = vc.seed;
  r.field = vc.field;
  std::string input_kind;
  const Json parsed = Json::parse(text, nullptr, false);
  if (!parsed.is_discarded() && parsed.is_object() && parsed.contains("generators")) {
    input_kind = "generator report";
    GeneratorFamily f;
    f.derived = generator_quiver(s);
    for (const auto& g : parsed.at("generators")) f.generators.push_back(descriptor_from_json(g));
    r = verify_family(f, vc, true);
  } else {
    input_kind = "polynomials";
    for (const auto& line : polynomial_lines(text)) {
      Polynomial p;
      try {
        p = Polynomial::parse(line);
      } catch (const std::invalid_argument& e) {
        throw ParseError("polynomial '" + line + "': " + e.what());
      }
      r.merge(check_invariance(s, p, vc, line));
    }
  }
  Json report;
  report["command"] = "verify";
  report["config"] = config_json(c, false);
  report["input"] = input_kind;
  report["setting"] = to_json(s);
  report["report"] = r.to_json();
  std::cout << input_kind << ": " << summary_line(r) << "\n";
  for (const auto& f : r.failures) std::cout << "  fail: " << f.check << " (trial " << f.trial << ")\n";
  emit(c, report);
  return r.passed() ? kOk : kDomain;
}

void add_run_options(CLI::App* cmd, RunConfig& c, bool bounds) {
  cmd->add_option("--field", c.field, "Q or a prime p >= 5")->capture_default_str();
  cmd->add_option("--seed", c.seed, "random seed")->capture_default_str();
  cmd->add_option("--trials", c.trials, "verification trials")->capture_default_str();
  cmd->add_flag("--reflect", c.reflect, "always include the reflection factor in O and SO samples");
  cmd->add_option("--out", c.out, "write the JSON report here");
  if (!bounds) return;
  cmd->add_option("--max-path-len", c.bounds.max_path_len, "longest path or word")->capture_default_str();
  cmd->add_option("--max-weight", c.bounds.max_weight, "largest weight entry")->capture_default_str();
  cmd->add_option("--max-cells", c.bounds.max_cells, "largest tableau")->capture_default_str();
  cmd->add_option("--degree-bound", c.bounds.degree_bound, "expand generators up to this degree")->capture_default_str();
  cmd->add_option("--max-generators", c.bounds.max_generators, "candidate budget")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariants of mixed quiver representations"};
  app.require_subcommand(1);
  RunConfig config;
  std::string setting_file, input_file, which, family = "all", group;
  int n = 0, d = 1;

  auto* validate_cmd = app.add_subcommand("validate", "check the validity conditions of a setting");
  validate_cmd->add_option("setting", setting_file, "setting JSON")->required();
  validate_cmd->add_option("--field", config.field, "Q or a prime p >= 5");
  validate_cmd->add_option("--out", config.out, "write the JSON report here");

  auto* derive_cmd = app.add_subcommand("derive", "build a derived setting with its substitution table");
  derive_cmd->add_option("construction", which, "double, loop, reduce or normalize")
      ->required()
      ->check(CLI::IsMember({"double", "loop", "reduce", "normalize"}));
  derive_cmd->add_option("setting", setting_file, "setting JSON")->required();
  derive_cmd->add_option("--out", config.out, "write the derived setting here (default stdout)");

  auto* gen_cmd = app.add_subcommand("generators", "enumerate and verify generating invariants");
  gen_cmd->add_option("setting", setting_file, "setting JSON")->required();
  gen_cmd->add_option("--family", family, "all, sigma or bpf")->check(CLI::IsMember({"all", "sigma", "bpf"}));
  add_run_options(gen_cmd, config, true);

  auto* mat_cmd = app.add_subcommand("matrices", "generators for d matrices under simultaneous conjugation");
  mat_cmd->add_option("-n,--dim", n, "matrix size")->required();
  mat_cmd->add_option("-d,--count", d, "number of matrices")->capture_default_str();
  mat_cmd->add_option("--group", group, "GL, O, SO or Sp")->required();
  add_run_options(mat_cmd, config, true);

  auto* bpf_cmd = app.add_subcommand("bpf", "evaluate a tableau with substitution");
  bpf_cmd->add_option("tableau", input_file, "tableau JSON")->required();
  bpf_cmd->add_option("--field", config.field, "Q or a prime p >= 5");
  bpf_cmd->add_option("--out", config.out, "write the JSON report here");

  auto* verify_cmd = app.add_subcommand("verify", "check invariance of polynomials or a generator report");
  verify_cmd->add_option("setting", setting_file, "setting JSON")->required();
  verify_cmd->add_option("input", input_file, "generator report JSON or one polynomial per line")->required();
  add_run_options(verify_cmd, config, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParse;
  }

  try {
    if (*validate_cmd) return cmd_validate(setting_file, config);
    if (*derive_cmd) return cmd_derive(which, setting_file, config);
    if (*gen_cmd) return cmd_generators(setting_file, family, config);
    if (*mat_cmd) return cmd_matrices(n, d, group, config);
    if (*bpf_cmd) return cmd_bpf(input_file, config);
    if (*verify_cmd) return cmd_verify(setting_file, input_file, config);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kDomain;
  }
  return kOk;
}
