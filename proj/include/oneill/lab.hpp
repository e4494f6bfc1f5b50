#pragma once

// Configuration, orchestration and reporting behind the oneill_lab CLI.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oneill/inequalities.hpp"

namespace oneill {

inline constexpr std::string_view kArtifactVersion = "0.1.0";
inline constexpr double kKahlerTol = 1e-6;
inline constexpr double kModelTol = 1e-4;  // relative, ambient tensor vs. space-form model

struct ToleranceConfig {
  std::map<IdentityId, double> identities;  // overrides of identity_tolerance
  double slack = kSlackTol;
  double divergence_slack = kDivergenceTol;
  double structure = kStructureTol;
  double kahler = kKahlerTol;
  double model = kModelTol;

  double identity(IdentityId id) const;
  double theorem(TheoremId id) const;
};

enum class ReportFormat { json, csv };

struct ScenarioConfig {
  std::string scenario;                    // builtin name or the inline definition's name
  std::optional<std::string> definition;   // inline definition, serialized JSON
  std::size_t points = 100;
  std::uint64_t seed = 42;
  ToleranceConfig tolerances;
  std::vector<TheoremId> theorems = all_theorems();
  std::vector<IdentityId> identities = all_identities();
  bool sweep_units = false;
  ReportFormat format = ReportFormat::json;
  std::string output = "-";  // "-" is stdout
};

/// Builtin scenario name, "hp2_chart", or a path to a JSON config file.
/// Errors: ParseError (with line and column), UnknownName, SchemaViolation, IoError.
ScenarioConfig load_scenario(std::string_view path_or_name);
ScenarioConfig parse_config(std::string_view json_text);
/// Names accepted without a config file.
std::vector<std::string> builtin_config_names();

/// A submersion, or just a quaternionic manifold when no map is given.
struct ResolvedScenario {
  std::string name;
  MetricChart chart;
  std::optional<QuaternionicTriple> triple;
  std::optional<SubmersionScenario> submersion;
  std::optional<double> c;
  Box box;
};
ResolvedScenario resolve_scenario(const ScenarioConfig& cfg);

struct StructureRecord {
  std::size_t point_index = 0;
  StructureCheck axioms;
  double kahler_residual = 0.0;
  double model_defect = 0.0;  // NaN without c
  bool pass = false;
};

struct IdentitySummary {
  IdentityResidualReport report;  // max residual over points
  std::size_t failures = 0;
};

struct ReportDocument {
  std::string scenario;
  std::uint64_t seed = 0;
  std::size_t requested_points = 0;
  std::size_t dim = 0;
  std::optional<std::size_t> fiber_dim;
  std::optional<double> c;
  std::vector<Point> points;
  std::vector<StructureRecord> structure;
  std::vector<IdentitySummary> identity_reports;
  ScenarioReport theorems;
  bool identities_only = false;
  std::vector<std::string> failures;  // human-readable reasons behind exit_status 1
  int exit_status = 0;
};

/// Samples, checks structure, identities and (unless identities_only) the
/// theorem catalog. Output depends only on the config, never on `threads`.
ReportDocument run_verify(const ScenarioConfig& cfg, unsigned threads = 1, bool identities_only = false);

std::string emit_report(const ReportDocument& doc, ReportFormat format);
/// Writes to a file or stdout ("-"); IoError on failure.
void write_report(const ReportDocument& doc, ReportFormat format, const std::string& path);

/// One line per builtin: name, dimensions, c and declared flags.
std::string catalog_listing();

}  // namespace oneill
