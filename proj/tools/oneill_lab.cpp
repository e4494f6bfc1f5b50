// oneill_lab: verify, catalog, identities.
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration or I/O error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oneill/lab.hpp"
#include "oneill/parallel.hpp"

namespace {

using namespace oneill;

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  for (std::string item; std::getline(in, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

template <class Id, class Parse>
std::vector<Id> parse_ids(const std::string& text, Parse parse, std::vector<Id> all, const char* what) {
  if (text == "all") return all;
  std::vector<Id> picked;
  for (const auto& name : split_list(text)) {
    try {
      picked.push_back(parse(name));
    } catch (const GeometryError& e) {
      throw GeometryError(ErrorCode::UnknownName, std::string(what) + ": " + e.what());
    }
  }
  if (picked.empty()) throw GeometryError(ErrorCode::SchemaViolation, std::string(what) + ": empty list");
  std::vector<Id> ordered;
  for (Id id : all)
    if (std::find(picked.begin(), picked.end(), id) != picked.end()) ordered.push_back(id);
  return ordered;
}

void apply_tolerance(ToleranceConfig& tol, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos) throw GeometryError(ErrorCode::SchemaViolation, "--tol: expected key=value, got '" + kv + "'");
  const std::string key = kv.substr(0, eq);
  double value = 0.0;
  try {
    std::size_t used = 0;
    value = std::stod(kv.substr(eq + 1), &used);
    if (used != kv.size() - eq - 1) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw GeometryError(ErrorCode::SchemaViolation, "--tol " + key + ": not a number");
  }
  if (!(value > 0.0)) throw GeometryError(ErrorCode::SchemaViolation, "--tol " + key + ": must be positive");
  if (key == "slack") tol.slack = value;
  else if (key == "divergence_slack") tol.divergence_slack = value;
  else if (key == "structure") tol.structure = value;
  else if (key == "kahler") tol.kahler = value;
  else if (key == "model") tol.model = value;
  else {
    try {
      tol.identities[parse_identity(key)] = value;
    } catch (const GeometryError&) {
      throw GeometryError(ErrorCode::UnknownName, "--tol: unknown key '" + key + "'");
    }
  }
}

struct RunFlags {
  std::string scenario;
  std::optional<long long> points;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tols;
  std::optional<std::string> theorems, identities, format, out;
  bool sweep_units = false;
};

ScenarioConfig build_config(const RunFlags& f) {
  ScenarioConfig cfg = load_scenario(f.scenario);
  if (f.points) {
    if (*f.points < 1) throw GeometryError(ErrorCode::SchemaViolation, "points: must be an integer >= 1");
    cfg.points = static_cast<std::size_t>(*f.points);
  }
  if (f.seed) cfg.seed = *f.seed;
  for (const auto& kv : f.tols) apply_tolerance(cfg.tolerances, kv);
  if (f.theorems) cfg.theorems = parse_ids<TheoremId>(*f.theorems, parse_theorem, all_theorems(), "theorems");
  if (f.identities) cfg.identities = parse_ids<IdentityId>(*f.identities, parse_identity, all_identities(), "identities");
  if (f.format) cfg.format = *f.format == "csv" ? ReportFormat::csv : ReportFormat::json;
  if (f.out) cfg.output = *f.out;
  if (f.sweep_units) cfg.sweep_units = true;
  return cfg;
}

void add_run_flags(CLI::App* cmd, RunFlags& f) {
  cmd->add_option("--scenario", f.scenario, "builtin name or path to a JSON config")->required();
  cmd->add_option("--points", f.points, "number of sample points (>= 1)");
  cmd->add_option("--seed", f.seed, "sampling seed");
  cmd->add_option("--tol", f.tols, "tolerance override key=value (repeatable)");
  cmd->add_option("--identities", f.identities, "comma-separated identity ids or 'all'");
  cmd->add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", f.out, "output path, '-' for stdout");
}

int run(const RunFlags& f, bool identities_only) {
  try {
    const ScenarioConfig cfg = build_config(f);
    const ReportDocument doc = run_verify(cfg, configured_threads(), identities_only);
    write_report(doc, cfg.format, cfg.output);
    for (const auto& why : doc.failures) std::cerr << "FAIL " << why << '\n';
    return doc.exit_status;
  } catch (const GeometryError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Riemannian submersions from quaternionic Kähler manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kArtifactVersion));

  RunFlags verify_flags, identity_flags;
  auto* verify = app.add_subcommand("verify", "sample points, check identities and the theorem catalog");
  add_run_flags(verify, verify_flags);
  verify->add_option("--theorems", verify_flags.theorems, "comma-separated theorem ids or 'all'");
  verify->add_flag("--sweep-units", verify_flags.sweep_units, "test every frame index, not just the first");

  auto* identities = app.add_subcommand("identities", "identity residuals only");
  add_run_flags(identities, identity_flags);

  auto* catalog = app.add_subcommand("catalog", "list builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (catalog->parsed()) {
    std::cout << catalog_listing();
    return 0;
  }
  if (identities->parsed()) return run(identity_flags, true);
  return run(verify_flags, false);
}
