// Acceptance run: one PASS/FAIL line per criterion, thresholds fixed here.
// Exit status is the number of failed criteria (0 when all pass).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "oneill/identities.hpp"
#include "oneill/inequalities.hpp"
#include "oneill/lab.hpp"
#include "oneill/parallel.hpp"

using namespace oneill;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<Point> chart_points(const MetricChart& chart, const Box& box, std::size_t n, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<Point> pts;
  while (pts.size() < n) {
    auto x = rng.in_box(box);
    if (chart.contains(x)) pts.push_back({x});
  }
  return pts;
}

double max_abs(const Vec<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// 1. flat charts vanish, round spheres have the right constant curvature
Outcome curvature_oracle() {
  double flat = 0.0;
  for (const auto& chart : {make_euclidean(3), make_euclidean(4), make_euclidean(6), make_euclidean(8),
                            make_euclidean(4, 2.5)}) {
    for (const auto& p : chart_points(chart, Box(chart.dim(), {-3.0, 3.0}), 100, 11))
      flat = std::max(flat, max_abs(curvature_at(chart, p).data));
  }
  auto sphere_error = [](double radius, double expected) {
    const auto chart = make_sphere2(radius);
    Sampler rng(12);
    double worst = 0.0;
    for (const auto& p : chart_points(chart, {{0.05, std::numbers::pi - 0.05}, {-3.1, 3.1}}, 100, 13)) {
      const auto x = rng.normal_vector(2), y = rng.normal_vector(2);
      if (std::abs(x[0] * y[1] - x[1] * y[0]) < 1e-3) continue;
      worst = std::max(worst, std::abs(sectional_at(chart, p, x, y) - expected));
    }
    return worst;
  };
  const double s1 = sphere_error(1.0, 1.0), s2 = sphere_error(2.0, 0.25);
  return {flat < 1e-8 && s1 < 1e-6 && s2 < 1e-6,
          fmt("flat max|R| = %.2e (< 1e-8), unit S2 max|K-1| = %.2e, radius-2 S2 max|K-0.25| = %.2e (< 1e-6)", flat,
              s1, s2)};
}

// 2. the HP2 chart is a quaternionic space form
Outcome space_form_consistency() {
  const auto chart = make_hp2_chart();
  const auto triple = builtin_triple("hp2");
  const Box box(8, {-1.0, 1.0});
  const auto est = estimate_c(triple, chart_points(chart, box, 10, 21), 10, 22);
  Sampler rng(23);
  double worst = 0.0;
  const auto pts = chart_points(chart, box, 200, 24);
  for (const auto& p : pts) {
    const auto x = rng.normal_vector(8), y = rng.normal_vector(8), z = rng.normal_vector(8), w = rng.normal_vector(8);
    const double model = model_curvature({est.mean}, chart.metric(p.coords), triple.at(p.coords), x, y, z, w);
    const double direct = riemann_at(chart, p, x, y, z, w);
    worst = std::max(worst, std::abs(direct - model) / std::abs(model));
  }
  return {est.spread < 1e-5 && worst < 1e-4,
          fmt("c_hat = %.9f, spread = %.2e (< 1e-5) over %zu planes; worst relative model gap = %.2e (< 1e-4) on 200 "
              "tuples",
              est.mean, est.spread, est.samples, worst)};
}

// 3. Gauss, horizontal, mixed and base-projection residuals on the catalog
Outcome gauss_codazzi(unsigned threads) {
  double gv = 0.0, gh = 0.0, mc = 0.0, bp = 0.0, hopf_star = 0.0;
  for (const auto& name : builtin_scenario_names()) {
    const auto s = builtin_scenario(name);
    const auto pts = sample_points(s, 100, 31);
    std::vector<std::array<double, 5>> res(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t k) {
      const auto ctx = make_context(s, pts[k]);
      res[k] = {gauss_vertical_residual(ctx), gauss_horizontal_residual(ctx), mixed_codazzi_residual(ctx),
                base_projection_residual(ctx), name == "hopf" ? std::abs(star_curvature_at(ctx, 0, 1, 1, 0) - 4.0) : 0.0};
    });
    for (const auto& r : res) {
      gv = std::max(gv, r[0]);
      gh = std::max(gh, r[1]);
      mc = std::max(mc, r[2]);
      bp = std::max(bp, r[3]);
      hopf_star = std::max(hopf_star, r[4]);
    }
  }
  return {gv < 1e-7 && gh < 1e-7 && mc < 1e-4 && bp < 1e-4 && hopf_star < 1e-4,
          fmt("4 scenarios x 100 pts: vertical %.1e, horizontal %.1e (< 1e-7); mixed %.1e, base %.1e (< 1e-4); "
              "Hopf |R*-4| = %.1e (< 1e-4)",
              gv, gh, mc, bp, hopf_star)};
}

// 4. frame identity for the squared second fundamental form
Outcome chen_frame_check() {
  Sampler rng(41);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t r = 1 + static_cast<std::size_t>(rng.unit() * 5), l = 1 + static_cast<std::size_t>(rng.unit() * 4);
    Vec<double> T(r * r * l);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j)
        for (std::size_t s = 0; s < l; ++s) T[(i * r + j) * l + s] = T[(j * r + i) * l + s] = rng.normal();
    worst = std::max(worst, chen_frame_identity(T, r, l).residual);
  }
  const auto diag = chen_frame_identity({1, 0, 0, 0, 1, 0, 0, 0, 1}, 3, 1);
  const bool printed_fails = std::abs(diag.printed_residual - 0.5) < 1e-12;
  return {worst < 1e-10 && diag.residual < 1e-10 && printed_fails,
          fmt("corrected form max residual %.1e (< 1e-10) on 1000 arrays r<=5, l<=4; printed form residual %.3f on "
              "diag(1,1,1), r = 3 (asserted 0.5)",
              worst, diag.printed_residual)};
}

std::vector<TheoremVerdict> verdicts(const std::string& name, unsigned threads) {
  const auto s = builtin_scenario(name);
  auto rep = scenario_report(s, sample_points(s, 100, 42), all_theorems(), {false, threads});
  if (!rep.errors.empty()) throw GeometryError(rep.errors.front().code, rep.errors.front().message);
  return std::move(rep.verdicts);
}

// 5. every applicable theorem holds on the anti-invariant catalog
Outcome soundness(unsigned threads) {
  std::size_t evaluated = 0, violations = 0;
  double worst_slack = 1e300, t2_gap = 0.0;
  for (const char* name : {"flat_linear_r1", "flat_linear_r2", "polar_circles"}) {
    for (const auto& v : verdicts(name, threads)) {
      if (!v.applicable) continue;
      ++evaluated;
      worst_slack = std::min(worst_slack, v.slack + theorem_tolerance(v.id));
      if (!(v.slack >= -theorem_tolerance(v.id))) ++violations;
      if (std::string(name) == "polar_circles" && v.id == TheoremId::T2) {
        const double rho2 = v.point.coords[0] * v.point.coords[0] + v.point.coords[1] * v.point.coords[1];
        t2_gap = std::max(t2_gap, std::abs(v.slack - 1.0 / rho2));
      }
    }
  }
  return {violations == 0 && evaluated > 0 && t2_gap < 1e-6,
          fmt("%zu applicable verdicts on 3 scenarios x 100 pts, %zu violations, min(slack + tol) = %.2e; polar T2 "
              "max|slack - 1/rho^2| = %.1e (< 1e-6)",
              evaluated, violations, worst_slack, t2_gap)};
}

// 6. equality holds exactly when the stated condition does
Outcome biconditionals(unsigned threads) {
  auto first_four = [](TheoremId id) {
    return id == TheoremId::T1 || id == TheoremId::T2 || id == TheoremId::T3 || id == TheoremId::T4;
  };
  std::size_t flat_checked = 0, flat_bad = 0, polar_checked = 0, polar_bad = 0;
  for (const char* name : {"flat_linear_r1", "flat_linear_r2"})
    for (const auto& v : verdicts(name, threads))
      if (first_four(v.id)) {
        ++flat_checked;
        if (!v.applicable || !v.equality || !v.equality_consistent) ++flat_bad;
      }
  for (const auto& v : verdicts("polar_circles", threads))
    if (v.id == TheoremId::T1 || v.id == TheoremId::T2) {
      ++polar_checked;
      if (!v.applicable || v.equality || v.flags.totally_geodesic || !v.equality_consistent || !(v.slack > 0.0))
        ++polar_bad;
    }
  return {flat_bad == 0 && polar_bad == 0 && flat_checked == 800 && polar_checked == 200,
          fmt("flat T1-T4: %zu/%zu equal with consistent flags; polar T1/T2: %zu/%zu strict with totally_geodesic "
              "= false",
              flat_checked - flat_bad, flat_checked, polar_checked - polar_bad, polar_checked)};
}

// 7. Ricci curvatures of the distributions by two routes
Outcome route_agreement(unsigned threads) {
  double worst = 0.0;
  std::size_t points = 0;
  for (const auto& name : builtin_scenario_names()) {
    const auto s = builtin_scenario(name);
    if (!s.declared.anti_invariant) continue;
    const auto pts = sample_points(s, 100, 71);
    std::vector<double> gap(pts.size());
    parallel_for(pts.size(), threads, [&](std::size_t k) {
      gap[k] = distribution_scalars(make_context(s, pts[k])).route_discrepancy;
    });
    for (double g : gap) worst = std::max(worst, g);
    points += pts.size();
  }
  return {worst < 1e-6 && points == 300,
          fmt("%zu points on anti-invariant scenarios, max route discrepancy %.1e (< 1e-6)", points, worst)};
}

// 8. closed-form block sums of the space-form tensor
Outcome synthetic_frames() {
  Sampler rng(81);
  double worst_v = 0.0, worst_h = 0.0;
  int configs = 0;
  for (double c : {-4.0, 4.0})
    for (int trial = 0; trial < 100; ++trial, ++configs) {
      const std::size_t r = 1 + static_cast<std::size_t>(rng.unit() * 6), l = 1 + static_cast<std::size_t>(rng.unit() * 6);
      const auto f = synthetic_anti_invariant_frame(r, l, rng);
      worst_v = std::max(worst_v, std::abs(vertical_block_sum(c, f) - vertical_block_formula(c, r)));
      worst_h = std::max(worst_h, std::abs(horizontal_block_sum(c, f) - horizontal_block_formula(c, f)));
    }
  return {worst_v < 1e-9 && worst_h < 1e-9 && configs == 200,
          fmt("%d frames, c in {-4, 4}, r, l <= 6: vertical block gap %.1e, horizontal block gap %.1e (< 1e-9)", configs,
              worst_v, worst_h)};
}

// 9. CLI determinism and exit codes
Outcome interface_contract(double elapsed_so_far) {
  const std::string lab = ONEILL_LAB_BINARY, golden = ONEILL_GOLDEN_DIR, scratch = ONEILL_SCRATCH_DIR;
  auto run = [&](const std::string& args) {
    const int st = std::system((lab + " " + args + " 2>/dev/null").c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  const auto t0 = std::chrono::steady_clock::now();
  bool identical = true;
  for (const char* fmt_name : {"json", "csv"}) {
    const std::string a = scratch + "/accept_a." + fmt_name, b = scratch + "/accept_b." + fmt_name;
    const std::string args = std::string("verify --scenario polar_circles --seed 42 --format ") + fmt_name;
    const int ra = run(args + " --out " + a), rb = run(args + " --out " + b);
    identical = identical && ra == 0 && rb == 0 && !slurp(a).empty() && slurp(a) == slurp(b);
  }
  const int pass_code = run("verify --scenario " + golden + "/pass_flat_r1.json --out /dev/null");
  const int fail_code = run("verify --scenario " + golden + "/fail_corrupted_triple.json --out /dev/null");
  const int config_code = run("verify --scenario " + golden + "/bad_points.json --out /dev/null");
  const double total = elapsed_so_far + std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {identical && pass_code == 0 && fail_code == 1 && config_code == 2 && total < 300.0,
          fmt("repeated verify byte-identical: %s; golden exit codes pass/fail/config = %d/%d/%d (want 0/1/2); "
              "acceptance wall time %.1f s (< 300 s)",
              identical ? "yes" : "no", pass_code, fail_code, config_code, total)};
}

}  // namespace

int main() {
  const unsigned threads = configured_threads();
  const auto start = std::chrono::steady_clock::now();
  auto since = [](auto t) { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count(); };

  struct Criterion {
    int number;
    const char* title;
    double budget;  // seconds, 0 when the criterion carries no runtime bound of its own
    std::function<Outcome()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "curvature oracle", 10.0, curvature_oracle},
      {2, "space-form consistency on HP2", 60.0, space_form_consistency},
      {3, "Gauss-Codazzi residuals", 0.0, [&] { return gauss_codazzi(threads); }},
      {4, "frame identity (corrected vs printed)", 0.0, chen_frame_check},
      {5, "theorem soundness sweep", 0.0, [&] { return soundness(threads); }},
      {6, "equality biconditionals", 0.0, [&] { return biconditionals(threads); }},
      {7, "route agreement for distribution Ricci", 0.0, [&] { return route_agreement(threads); }},
      {8, "synthetic-frame block formulas", 0.0, synthetic_frames},
      {9, "determinism and exit codes", 0.0, [&] { return interface_contract(since(start)); }},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.check();
    } catch (const std::exception& e) {
      out = {false, std::string("threw: ") + e.what()};
    }
    const double secs = since(t0);
    if (c.budget > 0.0 && secs >= c.budget) {
      out.pass = false;
      out.detail += fmt("; over the %.0f s budget", c.budget);
    }
    failed += !out.pass;
    std::printf("criterion %d %s  %s: %s [%.2f s]\n", c.number, out.pass ? "PASS" : "FAIL", c.title, out.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
