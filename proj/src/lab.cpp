#include "oneill/lab.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oneill/parallel.hpp"

namespace oneill {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::string_view kConventions =
    "R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y] Z; R(X,Y,Z,W) = g(R(X,Y)Z, W); "
    "sectional K(X,Y) = R(X,Y,Y,X)/|X^Y|^2; Ricci and scalar curvatures sum over ordered frame pairs; "
    "slack >= 0 means the inequality holds";

[[noreturn]] void schema(const std::string& field, const std::string& why) {
  throw GeometryError(ErrorCode::SchemaViolation, field + ": " + why);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

double positive_number(const json& v, const std::string& field) {
  if (!v.is_number() || !(v.get<double>() > 0.0) || !std::isfinite(v.get<double>())) schema(field, "must be a positive number");
  return v.get<double>();
}

template <class Id, class Parse>
std::vector<Id> id_list(const json& v, const std::string& field, Parse parse, std::vector<Id> all) {
  if (v.is_string() && v.get<std::string>() == "all") return all;
  if (!v.is_array() || v.empty()) schema(field, "must be \"all\" or a non-empty list of names");
  std::vector<Id> out;
  std::set<Id> seen;
  for (const auto& e : v) {
    if (!e.is_string()) schema(field, "entries must be strings");
    Id id;
    try {
      id = parse(e.get<std::string>());
    } catch (const GeometryError& err) {
      throw GeometryError(ErrorCode::UnknownName, field + ": " + err.what());
    }
    if (seen.insert(id).second) out.push_back(id);
  }
  // keep catalog order so reports do not depend on how the list was written
  std::vector<Id> ordered;
  for (Id id : all)
    if (seen.count(id)) ordered.push_back(id);
  return ordered;
}

bool is_builtin_submersion(std::string_view name) {
  for (const auto& n : builtin_scenario_names())
    if (n == name) return true;
  return false;
}

Box parse_box(const json& v, std::size_t dim, const std::string& field) {
  if (!v.is_array() || v.size() != dim) schema(field, "must list one [lo, hi] pair per coordinate");
  Box box;
  for (const auto& e : v) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number() || !(e[0].get<double>() < e[1].get<double>()))
      schema(field, "each entry must be [lo, hi] with lo < hi");
    box.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return box;
}

QuaternionicTriple named_triple(const json& v, const MetricChart& chart, const std::string& field) {
  if (!v.is_string()) schema(field, "must be a triple name");
  QuaternionicTriple t;
  try {
    t = builtin_triple(v.get<std::string>());
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::UnknownName, field + ": " + e.what());
  }
  if (t.dim() != chart.dim()) schema(field, "triple dimension does not match the chart");
  return t;
}

MetricChart named_chart(const json& v, const std::string& field) {
  if (!v.is_string()) schema(field, "must be a chart name");
  try {
    return builtin_chart(v.get<std::string>());
  } catch (const GeometryError& e) {
    throw GeometryError(ErrorCode::UnknownName, field + ": " + e.what());
  }
}

void check_definition_keys(const json& def) {
  static const std::set<std::string> allowed = {"name", "from", "chart", "base", "map", "triple", "space_form_c", "box"};
  for (const auto& [k, _] : def.items())
    if (!allowed.count(k)) schema("scenario." + k, "unknown field");
}

ResolvedScenario from_definition(const json& def) {
  check_definition_keys(def);
  ResolvedScenario out;
  out.name = def.value("name", std::string("inline"));
  if (def.contains("from")) {
    if (!def["from"].is_string()) schema("scenario.from", "must be a builtin scenario name");
    const std::string from = def["from"].get<std::string>();
    if (!is_builtin_submersion(from)) throw GeometryError(ErrorCode::UnknownName, "scenario.from: '" + from + "'");
    for (const char* k : {"chart", "base", "map"})
      if (def.contains(k)) schema(std::string("scenario.") + k, "cannot be combined with 'from'");
    SubmersionScenario s = builtin_scenario(from);
    s.name = out.name;
    if (def.contains("triple")) s.triple = named_triple(def["triple"], s.total, "scenario.triple");
    if (def.contains("space_form_c")) {
      if (def["space_form_c"].is_null())
        s.space_form_c.reset();
      else if (def["space_form_c"].is_number())
        s.space_form_c = def["space_form_c"].get<double>();
      else
        schema("scenario.space_form_c", "must be a number or null");
    }
    if (def.contains("box")) s.box = parse_box(def["box"], s.total_dim(), "scenario.box");
    out.chart = s.total;
    out.triple = s.triple;
    out.c = s.space_form_c;
    out.box = s.box;
    out.submersion = std::move(s);
    return out;
  }
  if (!def.contains("chart")) schema("scenario.chart", "required without 'from'");
  out.chart = named_chart(def["chart"], "scenario.chart");
  const std::size_t n = out.chart.dim();
  if (def.contains("triple")) out.triple = named_triple(def["triple"], out.chart, "scenario.triple");
  if (def.contains("space_form_c")) {
    if (!def["space_form_c"].is_number()) schema("scenario.space_form_c", "must be a number");
    out.c = def["space_form_c"].get<double>();
  }
  out.box = def.contains("box") ? parse_box(def["box"], n, "scenario.box") : Box(n, {-1.0, 1.0});
  if (def.contains("map") != def.contains("base")) schema(def.contains("map") ? "scenario.base" : "scenario.map", "map and base go together");
  if (!def.contains("map")) return out;

  const json& map = def["map"];
  if (!map.is_object() || !map.contains("keep") || !map["keep"].is_array()) schema("scenario.map", "must be {\"keep\": [coordinate indices]}");
  std::vector<std::size_t> keep;
  for (const auto& e : map["keep"]) {
    if (!e.is_number_unsigned() || e.get<std::size_t>() >= n) schema("scenario.map.keep", "indices must be coordinates of the chart");
    keep.push_back(e.get<std::size_t>());
  }
  SubmersionScenario s;
  s.name = out.name;
  s.total = out.chart;
  s.base = named_chart(def["base"], "scenario.base");
  if (s.base.dim() != keep.size()) schema("scenario.base", "dimension must equal the number of kept coordinates");
  s.map = SmoothField([keep](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Vec<T> y;
    for (std::size_t i : keep) y.push_back(x[i]);
    return y;
  });
  s.triple = out.triple;
  s.space_form_c = out.c;
  s.box = out.box;
  out.submersion = std::move(s);
  return out;
}

json definition_of(const ScenarioConfig& cfg) {
  if (cfg.definition) return json::parse(*cfg.definition);
  return json();
}

std::vector<Point> sample_chart(const MetricChart& chart, const Box& box, std::size_t count, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<Point> out;
  std::size_t attempts = 0;
  while (out.size() < count) {
    if (++attempts > 1000 * std::max<std::size_t>(count, 1))
      throw GeometryError(ErrorCode::PreconditionFailed, "sampling box rejects almost every draw");
    Vec<double> x = rng.in_box(box);
    if (chart.contains(x)) out.push_back({std::move(x)});
  }
  return out;
}

StructureRecord structure_at(const ResolvedScenario& sc, const Point& p, std::size_t index, std::uint64_t seed,
                             const ToleranceConfig& tol) {
  StructureRecord rec;
  rec.point_index = index;
  rec.model_defect = std::numeric_limits<double>::quiet_NaN();
  rec.axioms = check_structure_axioms(*sc.triple, p);
  rec.kahler_residual = check_parallelism(*sc.triple, p).residual;
  if (sc.c) {
    // a few random 4-tuples against the space-form tensor
    Sampler rng(seed + 7919 * (index + 1));
    const std::size_t n = sc.chart.dim();
    const auto R = curvature_at(sc.chart, p);
    const Vec<double> g = sc.chart.metric(p.coords);
    const TripleAt J = sc.triple->at(p.coords);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const Vec<double> x = rng.normal_vector(n), y = rng.normal_vector(n), z = rng.normal_vector(n),
                        w = rng.normal_vector(n);
      const double model = model_curvature({*sc.c}, g, J, x, y, z, w);
      worst = std::max(worst, std::abs(R.eval(x, y, z, w) - model) / std::max(1.0, std::abs(model)));
    }
    rec.model_defect = worst;
  }
  rec.pass = rec.axioms.algebra_defect < tol.structure && rec.axioms.hermitian_defect < tol.structure &&
             rec.kahler_residual < tol.kahler && (std::isnan(rec.model_defect) || rec.model_defect < tol.model);
  return rec;
}

void reclassify(TheoremVerdict& v, const ToleranceConfig& tol) {
  if (!v.applicable) return;
  const double t = tol.theorem(v.id);
  v.holds = std::isfinite(v.slack) && v.slack >= -t;
  v.equality = std::abs(v.slack) < t;
  v.equality_consistent = v.equality == flag_value(v.flags, theorem_entry(v.id).equality);
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ojson number_or_null(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

ojson flags_json(const EqualityFlags& f) {
  ojson o;
  o["totally_geodesic"] = f.totally_geodesic;
  o["umbilical"] = f.umbilical;
  o["horizontal_integrable"] = f.horizontal_integrable;
  o["chen_vertical"] = f.chen_vertical;
  o["chen_horizontal"] = f.chen_horizontal;
  o["umbilical_diag"] = f.umbilical_diag;
  o["norm_balance_TH"] = f.norm_balance_TH;
  o["norm_balance_TV"] = f.norm_balance_TV;
  return o;
}

ojson to_json(const ReportDocument& doc) {
  ojson root;
  ojson meta;
  meta["artifact"] = "oneill_lab";
  meta["version"] = std::string(kArtifactVersion);
  meta["scenario"] = doc.scenario;
  meta["seed"] = doc.seed;
  meta["points"] = doc.requested_points;
  meta["dimension"] = doc.dim;
  meta["fiber_dimension"] = doc.fiber_dim ? ojson(*doc.fiber_dim) : ojson(nullptr);
  meta["space_form_c"] = doc.c ? ojson(*doc.c) : ojson(nullptr);
  meta["mode"] = doc.identities_only ? "identities" : "verify";
  meta["conventions"] = std::string(kConventions);
  root["metadata"] = meta;

  ojson pts = ojson::array();
  for (const auto& p : doc.points) pts.push_back(p.coords);
  root["points"] = pts;

  ojson st = ojson::array();
  for (const auto& r : doc.structure) {
    ojson o;
    o["point_index"] = r.point_index;
    o["algebra_defect"] = r.axioms.algebra_defect;
    o["hermitian_defect"] = r.axioms.hermitian_defect;
    o["kahler_residual"] = r.kahler_residual;
    o["model_defect"] = number_or_null(r.model_defect);
    o["pass"] = r.pass;
    st.push_back(o);
  }
  root["structure"] = st;

  ojson ids = ojson::array();
  for (const auto& s : doc.identity_reports) {
    ojson o;
    o["id"] = std::string(identity_name(s.report.id));
    o["max_residual"] = number_or_null(s.report.max_residual);
    o["samples"] = s.report.samples;
    o["tolerance"] = s.report.tolerance;
    o["failures"] = s.failures;
    o["pass"] = s.report.pass;
    ids.push_back(o);
  }
  root["identity_reports"] = ids;

  ojson vs = ojson::array();
  for (const auto& v : doc.theorems.verdicts) {
    ojson o;
    o["id"] = std::string(theorem_name(v.id));
    o["point_index"] = v.point_index;
    o["unit"] = v.unit;
    o["point"] = v.point.coords;
    o["applicable"] = v.applicable;
    if (!v.applicable) {
      o["reason"] = v.reason;
      vs.push_back(o);
      continue;
    }
    o["lhs"] = number_or_null(v.lhs);
    o["rhs"] = number_or_null(v.rhs);
    o["slack"] = number_or_null(v.slack);
    o["holds"] = v.holds;
    o["equality"] = v.equality;
    o["equality_consistent"] = v.equality_consistent;
    o["alternative_slack"] = v.alternative_slack ? number_or_null(*v.alternative_slack) : ojson(nullptr);
    o["flags"] = flags_json(v.flags);
    vs.push_back(o);
  }
  root["verdicts"] = vs;

  ojson errs = ojson::array();
  for (const auto& e : doc.theorems.errors) {
    ojson o;
    o["point_index"] = e.point_index;
    o["point"] = e.point.coords;
    o["code"] = std::string(to_string(e.code));
    o["message"] = e.message;
    errs.push_back(o);
  }
  root["errors"] = errs;

  ojson sum = ojson::array();
  for (const auto& s : doc.theorems.summary) {
    ojson o;
    o["id"] = std::string(theorem_name(s.id));
    o["evaluated"] = s.evaluated;
    o["not_applicable"] = s.not_applicable;
    o["min_slack"] = s.evaluated ? number_or_null(s.min_slack) : ojson(nullptr);
    o["violations"] = s.violations;
    o["equality_points"] = s.equality_points;
    o["consistent_points"] = s.consistent_points;
    o["consistency_rate"] = s.consistency_rate;
    sum.push_back(o);
  }
  root["summary"] = sum;
  root["failures"] = doc.failures;
  root["exit_status"] = doc.exit_status;
  return root;
}

std::string to_csv(const ReportDocument& doc) {
  std::ostringstream out;
  out << "id,point_index,unit,applicable";
  for (std::size_t i = 0; i < doc.dim; ++i) out << ",x" << i;
  out << ",lhs,rhs,slack,holds,equality,equality_consistent,totally_geodesic,umbilical,horizontal_integrable,"
         "chen_vertical,chen_horizontal,umbilical_diag,norm_balance_TH,norm_balance_TV\n";
  auto b = [](bool v) { return v ? "true" : "false"; };
  for (const auto& v : doc.theorems.verdicts) {
    out << theorem_name(v.id) << ',' << v.point_index << ',' << v.unit << ',' << b(v.applicable);
    for (double x : v.point.coords) out << ',' << fmt17(x);
    if (!v.applicable) {
      out << ",,,,,,,,,,,,,,\n";
      continue;
    }
    const auto& f = v.flags;
    out << ',' << fmt17(v.lhs) << ',' << fmt17(v.rhs) << ',' << fmt17(v.slack) << ',' << b(v.holds) << ','
        << b(v.equality) << ',' << b(v.equality_consistent) << ',' << b(f.totally_geodesic) << ',' << b(f.umbilical)
        << ',' << b(f.horizontal_integrable) << ',' << b(f.chen_vertical) << ',' << b(f.chen_horizontal) << ','
        << b(f.umbilical_diag) << ',' << b(f.norm_balance_TH) << ',' << b(f.norm_balance_TV) << '\n';
  }
  return out.str();
}

}  // namespace

double ToleranceConfig::identity(IdentityId id) const {
  const auto it = identities.find(id);
  return it != identities.end() ? it->second : identity_tolerance(id);
}

double ToleranceConfig::theorem(TheoremId id) const {
  return theorem_entry(id).uses_divergence ? divergence_slack : slack;
}

std::vector<std::string> builtin_config_names() {
  auto names = builtin_scenario_names();
  names.push_back("hp2_chart");
  return names;
}

ScenarioConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte);
    throw GeometryError(ErrorCode::ParseError,
                        "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_object()) schema("(root)", "config must be a JSON object");
  static const std::set<std::string> allowed = {"scenario", "points", "seed",       "tolerances", "theorems",
                                                "identities", "output", "sweep_units"};
  for (const auto& [k, _] : doc.items())
    if (!allowed.count(k)) schema(k, "unknown field");

  ScenarioConfig cfg;
  if (!doc.contains("scenario")) schema("scenario", "required");
  const json& sc = doc["scenario"];
  if (sc.is_string()) {
    cfg.scenario = sc.get<std::string>();
    const auto names = builtin_config_names();
    if (std::find(names.begin(), names.end(), cfg.scenario) == names.end())
      throw GeometryError(ErrorCode::UnknownName, "scenario: no builtin named '" + cfg.scenario + "'");
  } else if (sc.is_object()) {
    cfg.definition = sc.dump();
    cfg.scenario = resolve_scenario(cfg).name;  // validates eagerly
  } else {
    schema("scenario", "must be a builtin name or an inline definition");
  }

  if (doc.contains("points")) {
    const json& p = doc["points"];
    if (!p.is_number_integer() || p.get<long long>() < 1) schema("points", "must be an integer >= 1");
    cfg.points = p.get<std::size_t>();
  }
  if (doc.contains("seed")) {
    const json& s = doc["seed"];
    if (!s.is_number_unsigned()) schema("seed", "must be a non-negative integer");
    cfg.seed = s.get<std::uint64_t>();
  }
  if (doc.contains("theorems")) cfg.theorems = id_list<TheoremId>(doc["theorems"], "theorems", parse_theorem, all_theorems());
  if (doc.contains("identities"))
    cfg.identities = id_list<IdentityId>(doc["identities"], "identities", parse_identity, all_identities());
  if (doc.contains("sweep_units")) {
    if (!doc["sweep_units"].is_boolean()) schema("sweep_units", "must be a boolean");
    cfg.sweep_units = doc["sweep_units"].get<bool>();
  }
  if (doc.contains("tolerances")) {
    const json& t = doc["tolerances"];
    if (!t.is_object()) schema("tolerances", "must be an object");
    for (const auto& [k, v] : t.items()) {
      if (k == "slack") cfg.tolerances.slack = positive_number(v, "tolerances.slack");
      else if (k == "divergence_slack") cfg.tolerances.divergence_slack = positive_number(v, "tolerances.divergence_slack");
      else if (k == "structure") cfg.tolerances.structure = positive_number(v, "tolerances.structure");
      else if (k == "kahler") cfg.tolerances.kahler = positive_number(v, "tolerances.kahler");
      else if (k == "model") cfg.tolerances.model = positive_number(v, "tolerances.model");
      else if (k == "identities") {
        if (!v.is_object()) schema("tolerances.identities", "must map identity names to numbers");
        for (const auto& [name, val] : v.items()) {
          IdentityId id;
          try {
            id = parse_identity(name);
          } catch (const GeometryError& e) {
            throw GeometryError(ErrorCode::UnknownName, std::string("tolerances.identities: ") + e.what());
          }
          cfg.tolerances.identities[id] = positive_number(val, "tolerances.identities." + name);
        }
      } else {
        schema("tolerances." + k, "unknown field");
      }
    }
  }
  if (doc.contains("output")) {
    const json& o = doc["output"];
    if (!o.is_object()) schema("output", "must be an object");
    for (const auto& [k, v] : o.items()) {
      if (k == "format") {
        if (v == "json") cfg.format = ReportFormat::json;
        else if (v == "csv") cfg.format = ReportFormat::csv;
        else schema("output.format", "must be \"json\" or \"csv\"");
      } else if (k == "path") {
        if (!v.is_string() || v.get<std::string>().empty()) schema("output.path", "must be a non-empty string");
        cfg.output = v.get<std::string>();
      } else {
        schema("output." + k, "unknown field");
      }
    }
  }
  return cfg;
}

ScenarioConfig load_scenario(std::string_view path_or_name) {
  for (const auto& n : builtin_config_names())
    if (n == path_or_name) {
      ScenarioConfig cfg;
      cfg.scenario = n;
      return cfg;
    }
  std::ifstream in{std::string(path_or_name)};
  if (!in) {
    // a bare word that is neither a builtin nor a file is a name error
    if (path_or_name.find('/') == std::string_view::npos && path_or_name.find('.') == std::string_view::npos)
      throw GeometryError(ErrorCode::UnknownName, "no builtin scenario named '" + std::string(path_or_name) + "'");
    throw GeometryError(ErrorCode::IoError, "cannot read '" + std::string(path_or_name) + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

ResolvedScenario resolve_scenario(const ScenarioConfig& cfg) {
  if (cfg.definition) return from_definition(definition_of(cfg));
  ResolvedScenario out;
  out.name = cfg.scenario;
  if (cfg.scenario == "hp2_chart") {
    out.chart = make_hp2_chart();
    out.triple = builtin_triple("hp2");
    out.c = 4.0;
    out.box = Box(8, {-1.0, 1.0});
    return out;
  }
  SubmersionScenario s = builtin_scenario(cfg.scenario);
  out.chart = s.total;
  out.triple = s.triple;
  out.c = s.space_form_c;
  out.box = s.box;
  out.submersion = std::move(s);
  return out;
}

ReportDocument run_verify(const ScenarioConfig& cfg, unsigned threads, bool identities_only) {
  const ResolvedScenario sc = resolve_scenario(cfg);
  ReportDocument doc;
  doc.scenario = sc.name;
  doc.seed = cfg.seed;
  doc.requested_points = cfg.points;
  doc.dim = sc.chart.dim();
  doc.c = sc.c;
  doc.identities_only = identities_only;
  if (sc.submersion) doc.fiber_dim = sc.submersion->fiber_dim();
  doc.points = sc.submersion ? sample_points(*sc.submersion, cfg.points, cfg.seed)
                             : sample_chart(sc.chart, sc.box, cfg.points, cfg.seed);
  const std::size_t n = doc.points.size();

  // structure of the triple, per point
  if (sc.triple) {
    doc.structure.resize(n);
    parallel_for(n, threads, [&](std::size_t k) {
      doc.structure[k] = structure_at(sc, doc.points[k], k, cfg.seed, cfg.tolerances);
    });
    std::size_t bad = 0;
    for (const auto& r : doc.structure) bad += !r.pass;
    if (bad) doc.failures.push_back("structure checks failed at " + std::to_string(bad) + " of " + std::to_string(n) + " points");
  }

  if (!sc.submersion) {
    // a bare manifold: every theorem is reported as not applicable
    if (!identities_only)
      for (std::size_t k = 0; k < n; ++k)
        for (TheoremId id : cfg.theorems) {
          TheoremVerdict v;
          v.id = id;
          v.point = doc.points[k];
          v.point_index = k;
          v.applicable = false;
          v.reason = "no submersion in this scenario";
          doc.theorems.verdicts.push_back(std::move(v));
        }
    doc.theorems.summary = summarize(doc.theorems.verdicts, identities_only ? std::vector<TheoremId>{} : cfg.theorems);
  } else {
    const SubmersionScenario& s = *sc.submersion;
    // identity residuals, per point, reduced in point order
    std::vector<std::vector<IdentityResidualReport>> per_point(n);
    std::vector<std::optional<PointError>> id_errors(n);
    parallel_for(n, threads, [&](std::size_t k) {
      try {
        per_point[k] = identity_reports_at(s, doc.points[k], cfg.identities);
      } catch (const GeometryError& e) {
        id_errors[k] = PointError{k, doc.points[k], e.code(), e.what()};
      }
    });
    for (IdentityId id : cfg.identities) {
      IdentitySummary sum;
      sum.report.id = id;
      sum.report.tolerance = cfg.tolerances.identity(id);
      for (const auto& reps : per_point)
        for (const auto& r : reps) {
          if (r.id != id) continue;
          ++sum.report.samples;
          if (!(r.max_residual < sum.report.tolerance)) ++sum.failures;
          if (!std::isfinite(r.max_residual))
            sum.report.max_residual = r.max_residual;
          else if (std::isfinite(sum.report.max_residual))
            sum.report.max_residual = std::max(sum.report.max_residual, r.max_residual);
        }
      sum.report.pass = sum.failures == 0;
      if (sum.report.samples == 0) continue;  // not applicable here (e.g. no space form constant)
      if (!sum.report.pass)
        doc.failures.push_back(std::string(identity_name(id)) + " residual above tolerance at " +
                               std::to_string(sum.failures) + " points");
      doc.identity_reports.push_back(sum);
    }

    if (!identities_only) {
      doc.theorems = scenario_report(s, doc.points, cfg.theorems, {cfg.sweep_units, threads});
      for (auto& v : doc.theorems.verdicts) reclassify(v, cfg.tolerances);
      doc.theorems.summary = summarize(doc.theorems.verdicts, cfg.theorems);
      for (const auto& sm : doc.theorems.summary) {
        if (sm.violations)
          doc.failures.push_back(std::string(theorem_name(sm.id)) + " violated at " + std::to_string(sm.violations) + " points");
        if (sm.consistent_points != sm.evaluated)
          doc.failures.push_back(std::string(theorem_name(sm.id)) + " equality condition inconsistent at " +
                                 std::to_string(sm.evaluated - sm.consistent_points) + " points");
      }
    }
    // identity failures are per point too; merge them into the error list in order
    std::vector<PointError> merged;
    std::size_t ti = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (id_errors[k]) merged.push_back(*id_errors[k]);
      while (ti < doc.theorems.errors.size() && doc.theorems.errors[ti].point_index == k) {
        if (!id_errors[k]) merged.push_back(doc.theorems.errors[ti]);
        ++ti;
      }
    }
    doc.theorems.errors = std::move(merged);
    std::set<std::size_t> failed;
    for (const auto& e : doc.theorems.errors) failed.insert(e.point_index);
    if (n > 0 && failed.size() == n)
      doc.failures.push_back(std::string(to_string(ErrorCode::AllPointsFailed)) + ": every sampled point raised an error");
  }
  doc.exit_status = doc.failures.empty() ? 0 : 1;
  return doc;
}

std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  if (format == ReportFormat::csv) return to_csv(doc);
  return to_json(doc).dump(2) + "\n";
}

void write_report(const ReportDocument& doc, ReportFormat format, const std::string& path) {
  const std::string bytes = emit_report(doc, format);
  if (path == "-") {
    std::cout << bytes;
    std::cout.flush();
    if (!std::cout) throw GeometryError(ErrorCode::IoError, "cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GeometryError(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  out << bytes;
  if (!out) throw GeometryError(ErrorCode::IoError, "write to '" + path + "' failed");
}

std::string catalog_listing() {
  std::ostringstream out;
  out << "name                 n  r  l  c      anti_invariant  totally_geodesic  umbilical  horizontal_integrable\n";
  auto yn = [](bool v) { return v ? "yes" : "no"; };
  for (const auto& name : builtin_scenario_names()) {
    const auto s = builtin_scenario(name);
    char line[256];
    std::snprintf(line, sizeof line, "%-20s %-2zu %-2zu %-2zu %-6s %-15s %-17s %-10s %s\n", name.c_str(), s.total_dim(),
                  s.fiber_dim(), s.base_dim(), s.space_form_c ? fmt17(*s.space_form_c).c_str() : "-",
                  yn(s.declared.anti_invariant), yn(s.declared.totally_geodesic_fibers), yn(s.declared.umbilical_fibers),
                  yn(s.declared.horizontal_integrable));
    out << line;
  }
  char line[256];
  std::snprintf(line, sizeof line, "%-20s %-2d %-2s %-2s %-6s %s\n", "hp2_chart", 8, "-", "-", "4",
                "(manifold only: structure and curvature-model checks)");
  out << line;
  return out.str();
}

}  // namespace oneill
