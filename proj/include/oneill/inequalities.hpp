#pragma once

// Chen-type inequalities for anti-invariant submersions from quaternionic
// space forms: each entry is evaluated pointwise as lhs, rhs and a signed
// slack, and its stated equality condition is compared with the flags
// computed from the T/A tables.
//
// K below is the closed-form scalar term
//   c/4 ((ℓ+r)(ℓ+r−1) + Σ_α (Σ_i 6‖B_α X_i‖² + 3‖C_α X_1‖²)).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oneill/identities.hpp"

namespace oneill {

enum class TheoremId { T1, T2, T3, T4, T5, T6, T7, T8a, T8b, C1a, C1b, T9a, T9b, C2a, C2b, T10, T11, T12, T13, C3 };

enum class Direction { at_least, at_most };  // lhs ≥ rhs, lhs ≤ rhs

enum class EqualityCondition {
  totally_geodesic,
  horizontal_integrable,
  chen_vertical,
  chen_horizontal,
  umbilical_diag,
  norm_balance_TH,
  norm_balance_TV,
};

/// Extra hypothesis a corollary places on the submersion.
enum class Requirement { none, totally_geodesic, horizontal_integrable };

struct TheoremEntry {
  TheoremId id;
  std::string_view name;
  Direction direction;
  Requirement requirement;
  EqualityCondition equality;
  bool uses_divergence;  // δ(N) enters, so the looser tolerance applies
  bool single_vector;    // depends on the chosen U_k / X_k
  std::string_view statement;
};

const std::vector<TheoremEntry>& theorem_catalog();
const TheoremEntry& theorem_entry(TheoremId id);
std::string_view theorem_name(TheoremId id);
TheoremId parse_theorem(std::string_view name);  // UnknownTheorem
std::vector<TheoremId> all_theorems();

inline constexpr double kEqualityTol = 1e-7;
inline constexpr double kSlackTol = 1e-7;
inline constexpr double kDivergenceTol = 1e-4;

/// Slack and equality tolerance of an entry.
double theorem_tolerance(TheoremId id);

struct EqualityFlags {
  bool totally_geodesic = false;
  bool umbilical = false;
  bool horizontal_integrable = false;
  bool chen_vertical = false;    // T_uu^s = Σ_{j≠u} T_jj^s and T_uj^s = 0 for j ≠ u
  bool chen_horizontal = false;  // A_uj^β = 0 for j ≠ u
  bool umbilical_diag = false;   // equal diagonal T_jj, vanishing off-diagonal
  bool norm_balance_TH = false;  // ‖A^H‖ = ‖T^H‖
  bool norm_balance_TV = false;  // ‖A^V‖ = ‖T^V‖
};

/// `unit` plays the role of the distinguished first frame vector.
EqualityFlags equality_flags_at(const OneillSample& sample, std::size_t unit = 0, double tol = kFlagTol);
bool flag_value(const EqualityFlags& flags, EqualityCondition condition);
std::string_view condition_name(EqualityCondition condition);

struct TheoremVerdict {
  TheoremId id = TheoremId::T1;
  Point point;
  std::size_t point_index = 0;
  std::size_t unit = 0;
  bool applicable = true;
  std::string reason;  // why not applicable
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // ≥ 0 when the inequality holds
  bool holds = false;
  bool equality = false;
  EqualityFlags flags;
  bool equality_consistent = false;
  /// Slack under the other reading of an ambiguous term: per-α C-term for
  /// T6/T7, tr(A^V)² read as ‖A^V‖² for T13/C3.
  std::optional<double> alternative_slack;
};

/// Per-point data every theorem draws on.
struct TheoremInputs {
  CurvatureContext ctx;
  DistributionCurvatures dc;
  double c = 0.0;
  double anti_invariance_defect = 0.0;
};

/// Throws NotApplicable when the scenario has no quaternionic structure or the
/// point fails anti-invariance, MissingC without a space form constant.
TheoremInputs theorem_inputs(const SubmersionScenario& s, const Point& p);

/// Verdict from precomputed inputs; requirement or index failures come back
/// with applicable = false.
TheoremVerdict evaluate_theorem(TheoremId id, const TheoremInputs& in, std::size_t unit = 0);

/// Single evaluation; NotApplicable / MissingC / UnknownTheorem are thrown.
TheoremVerdict evaluate_theorem(TheoremId id, const SubmersionScenario& s, const Point& p, std::size_t unit = 0);

struct PointError {
  std::size_t point_index = 0;
  Point point;
  ErrorCode code = ErrorCode::PreconditionFailed;
  std::string message;
};

struct TheoremSummary {
  TheoremId id = TheoremId::T1;
  std::size_t evaluated = 0;
  std::size_t not_applicable = 0;
  double min_slack = 0.0;
  std::size_t violations = 0;
  std::size_t equality_points = 0;
  std::size_t consistent_points = 0;
  double consistency_rate = 0.0;
};

struct ReportOptions {
  bool sweep_units = false;  // every frame index instead of index 0 only
  unsigned threads = 1;
};

struct ScenarioReport {
  std::vector<TheoremVerdict> verdicts;  // ordered by point, then theorem, then unit
  std::vector<PointError> errors;
  std::vector<TheoremSummary> summary;  // one per requested id
};

ScenarioReport scenario_report(const SubmersionScenario& s, const std::vector<Point>& points,
                               const std::vector<TheoremId>& ids, const ReportOptions& options = {});

std::vector<TheoremSummary> summarize(const std::vector<TheoremVerdict>& verdicts, const std::vector<TheoremId>& ids);

}  // namespace oneill
