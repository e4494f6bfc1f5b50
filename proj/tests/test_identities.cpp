#include <doctest.h>

#include <cmath>

#include "oneill/identities.hpp"
#include "test_support.hpp"

using namespace oneill;
using testing_support::Rng;

namespace {

// Concentric round spheres in R³ × R: π(x) = (|x₀..x₂|, x₃). Fibers are
// 2-spheres of radius ρ, so their intrinsic sectional curvature is 1/ρ².
SubmersionScenario spherical_shells() {
  SubmersionScenario s;
  s.name = "spherical_shells";
  s.total = make_euclidean(4);
  s.base = make_euclidean(2);
  s.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]), x[3]};
  });
  s.box = {{-2, 2}, {-2, 2}, {-2, 2}, {-1, 1}};
  s.admissible = [](const Vec<double>& x) { return std::hypot(x[0], x[1], x[2]) > 0.5; };
  return s;
}

std::vector<SubmersionScenario> catalog() {
  std::vector<SubmersionScenario> out;
  for (const auto& name : builtin_scenario_names()) out.push_back(builtin_scenario(name));
  return out;
}

// τ as an ordered-pair sum of the coordinate tensor over an orthonormal frame.
double frame_tau(const CurvatureContext& ctx) {
  double acc = 0.0;
  for (std::size_t a = 0; a < ctx.dim(); ++a)
    for (std::size_t b = 0; b < ctx.dim(); ++b) acc += ctx.ambient(a, b, b, a);
  return acc;
}

Vec<double> random_T(Rng& rng, std::size_t r, std::size_t l) {
  Vec<double> T(r * r * l);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      for (std::size_t s = 0; s < l; ++s) T[(i * r + j) * l + s] = T[(j * r + i) * l + s] = rng.normal();
  return T;
}

}  // namespace

TEST_CASE("frame_tensor agrees with direct evaluation") {
  Rng rng(3);
  const auto chart = make_sphere3();
  const Point p{{0.7, 0.4, -1.1}};
  const auto R = curvature_at(chart, p);
  std::vector<Vec<double>> frame;
  for (int i = 0; i < 3; ++i) frame.push_back(rng.normal_vector(3));
  const Vec<double> F = frame_tensor(R, frame);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t d = 0; d < 3; ++d)
          CHECK(F[((a * 3 + b) * 3 + c) * 3 + d] ==
                doctest::Approx(R.eval(frame[a], frame[b], frame[c], frame[d])).epsilon(1e-12));
}

TEST_CASE("fiber curvature sign: round spherical fibers are positively curved") {
  const auto s = spherical_shells();
  for (const auto& p : sample_points(s, 6, 11)) {
    const double rho = std::hypot(p.coords[0], p.coords[1], p.coords[2]);
    const auto ctx = make_context(s, p);
    REQUIRE(ctx.r() == 2);
    const auto& U = ctx.sample.frames.vertical.vectors;
    const double intrinsic = hat_curvature_intrinsic(s, p, U[0], U[1], U[1], U[0]);
    CHECK(intrinsic == doctest::Approx(1.0 / (rho * rho)).epsilon(1e-9));
    CHECK(hat_curvature_at(ctx, 0, 1, 1, 0) == doctest::Approx(intrinsic).epsilon(1e-9));
    CHECK(gauss_vertical_residual(ctx) < 1e-7);
    // The classical correction signs give the opposite value.
    const double opposite = ctx.ambient(0, 1, 1, 0) + ctx.g(ctx.TUU[1], ctx.TUU[2]) - ctx.g(ctx.TUU[3], ctx.TUU[0]);
    CHECK(opposite == doctest::Approx(-1.0 / (rho * rho)).epsilon(1e-9));
  }
}

TEST_CASE("horizontal curvature sign: Hopf base has curvature 4") {
  const auto s = make_hopf();
  for (const auto& p : sample_points(s, 5, 7)) {
    const auto ctx = make_context(s, p);
    REQUIRE(ctx.l() == 2);
    const auto& X = ctx.sample.frames.horizontal.vectors;
    CHECK(star_curvature_intrinsic(s, p, X[0], X[1], X[1], X[0]) == doctest::Approx(4.0).epsilon(1e-8));
    CHECK(star_curvature_at(ctx, 0, 1, 1, 0) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(ctx.ambient(2, 1, 1, 2) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(gauss_horizontal_residual(ctx) < 1e-7);
    CHECK(base_projection_residual(ctx) < 1e-4);
  }
}

TEST_CASE("Gauss relations, mixed Codazzi and base projection on the catalog") {
  auto scenarios = catalog();
  scenarios.push_back(spherical_shells());
  for (const auto& s : scenarios) {
    CAPTURE(s.name);
    for (const auto& p : sample_points(s, 3, 5)) {
      const auto ctx = make_context(s, p);
      CHECK(gauss_vertical_residual(ctx) < identity_tolerance(IdentityId::gauss_vertical));
      CHECK(gauss_horizontal_residual(ctx) < identity_tolerance(IdentityId::horizontal));
      CHECK(mixed_codazzi_residual(ctx) < identity_tolerance(IdentityId::mixed_codazzi));
      CHECK(base_projection_residual(ctx) < identity_tolerance(IdentityId::base_projection));
    }
  }
}

TEST_CASE("mixed Codazzi is not vacuous") {
  // Hopf has mixed sectional curvature 1 carried entirely by the A-terms; the
  // flat cases balance the T-derivative against the T-T term.
  for (const auto& s : {spherical_shells(), make_hopf(), make_polar_circles()}) {
    CAPTURE(s.name);
    const auto p = sample_points(s, 1, 21).front();
    const auto ctx = make_context(s, p);
    double biggest = 0.0;
    for (std::size_t i = 0; i < ctx.l(); ++i)
      for (std::size_t a = 0; a < ctx.r(); ++a)
        biggest = std::max(biggest, std::abs(ctx.ambient(ctx.r() + i, a, a, ctx.r() + i)));
    if (s.name == "hopf") CHECK(biggest > 0.5);
    CHECK(mixed_codazzi_residual(ctx) < 1e-4);
    CHECK(mixed_codazzi_residual(ctx, 1e-3) < 1e-4);
  }
}

TEST_CASE("Chen frame identity") {
  Rng rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto r = static_cast<std::size_t>(rng.integer(1, 6));
    const auto l = static_cast<std::size_t>(rng.integer(1, 6));
    const auto res = chen_frame_identity(random_T(rng, r, l), r, l);
    CHECK(res.residual < 1e-10 * std::max(1.0, res.lhs));
  }
  SUBCASE("printed form misses by one half on the identity table") {
    const Vec<double> T = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    const auto res = chen_frame_identity(T, 3, 1);
    CHECK(res.lhs == 3.0);
    CHECK(res.residual < 1e-15);
    CHECK(res.printed_residual == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(chen_frame_identity(Vec<double>(5, 0.0), 2, 2), GeometryError);
}

TEST_CASE("distribution scalars") {
  SUBCASE("polar circles") {
    const auto s = make_polar_circles();
    for (const auto& p : sample_points(s, 5, 2)) {
      const auto ctx = make_context(s, p);
      const auto dc = distribution_scalars(ctx);
      CHECK(dc.hat_tau == doctest::Approx(0.0));
      CHECK(std::abs(dc.star_tau) < 1e-9);
      CHECK(std::abs(dc.ambient_tau) < 1e-12);
      CHECK(dc.route_discrepancy < 1e-6);
      CHECK(tau_decomposition_residual(ctx, dc) < 1e-9);
    }
  }
  SUBCASE("flat linear projections") {
    for (const auto& s : {make_flat_linear_r1(), make_flat_linear_r2()}) {
      const auto p = sample_points(s, 1, 9).front();
      const auto ctx = make_context(s, p);
      const auto dc = distribution_scalars(ctx);
      CHECK(dc.hat_tau == 0.0);
      CHECK(dc.star_tau == 0.0);
      CHECK(dc.route_discrepancy < 1e-12);
    }
  }
  SUBCASE("Hopf declares no space form") {
    const auto s = make_hopf();
    const auto ctx = make_context(s, sample_points(s, 1, 9).front());
    try {
      (void)distribution_scalars(ctx);
      FAIL("expected MissingC");
    } catch (const GeometryError& e) {
      CHECK(e.code() == ErrorCode::MissingC);
    }
  }
}

TEST_CASE("scalar curvature splits into fiber, base and configuration terms") {
  // Oracle: τ summed over a frame from the coordinate tensor. Checked on every
  // scenario, including Hopf where A ≠ 0 separates the two sign conventions.
  auto scenarios = catalog();
  scenarios.push_back(spherical_shells());
  for (const auto& s : scenarios) {
    CAPTURE(s.name);
    for (const auto& p : sample_points(s, 4, 13)) {
      const auto ctx = make_context(s, p);
      double hat = 0.0, star = 0.0;
      for (std::size_t i = 0; i < ctx.r(); ++i)
        for (std::size_t j = 0; j < ctx.r(); ++j) hat += hat_curvature_at(ctx, i, j, j, i);
      for (std::size_t i = 0; i < ctx.l(); ++i)
        for (std::size_t j = 0; j < ctx.l(); ++j) star += star_curvature_at(ctx, i, j, j, i);
      const auto& sm = ctx.sample;
      const auto& nm = sm.norms;
      const double r = static_cast<double>(sm.r);
      const double split = hat + star - r * r * sm.H_norm2 + nm.T_H - 3.0 * nm.A_V + 2.0 * sm.deltaN +
                           2.0 * nm.A_H - 2.0 * nm.T_V;
      CHECK(split == doctest::Approx(frame_tau(ctx)).epsilon(1e-5).scale(1.0));
      if (s.name == "hopf") {
        CHECK(frame_tau(ctx) == doctest::Approx(6.0).epsilon(1e-9));
        const double flipped = hat + star + r * r * sm.H_norm2 - nm.T_H + 3.0 * nm.A_V - 2.0 * sm.deltaN -
                               2.0 * nm.A_H + 2.0 * nm.T_V;
        CHECK(flipped == doctest::Approx(10.0).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("master identity on the catalog") {
  for (const auto& s : {make_flat_linear_r1(), make_flat_linear_r2(), make_polar_circles()}) {
    CAPTURE(s.name);
    for (const auto& p : sample_points(s, 5, 17)) {
      const auto ctx = make_context(s, p);
      const auto m = master_identity(ctx, distribution_scalars(ctx));
      CHECK(m.residual_fixed < 1e-4);
      CHECK(m.residual_summed < 1e-4);
      CHECK(m.residual_signed < 1e-4);
    }
  }
}

TEST_CASE("identity reports") {
  CHECK(parse_identity("master") == IdentityId::master);
  CHECK(identity_name(IdentityId::chen_frame) == "chen_frame");
  CHECK_THROWS_AS(parse_identity("nope"), GeometryError);
  const auto polar = make_polar_circles();
  const auto reps = identity_reports_at(polar, sample_points(polar, 1, 4).front(), all_identities());
  CHECK(reps.size() == all_identities().size());
  for (const auto& r : reps) CHECK(r.pass);
  const auto hopf = make_hopf();
  const auto hreps = identity_reports_at(hopf, sample_points(hopf, 1, 4).front(), all_identities());
  CHECK(hreps.size() == all_identities().size() - 2);  // no scalar identities without c
  for (const auto& r : hreps) CHECK(r.pass);
}

TEST_CASE("space-form block sums over synthetic anti-invariant frames") {
  Sampler rng(42);
  Rng pick(5);
  int configurations = 0;
  for (double c : {4.0, -4.0}) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto r = static_cast<std::size_t>(pick.integer(1, 6));
      const auto l = static_cast<std::size_t>(pick.integer(1, 6));
      const auto f = synthetic_anti_invariant_frame(r, l, rng);
      CAPTURE(r);
      CAPTURE(l);
      // the frame really is anti-invariant and orthonormal
      for (const auto& J : f.J)
        for (const auto& u : f.U)
          for (const auto& v : f.U) CHECK(std::abs(la::inner(f.g, la::matvec(J, u, f.n, f.n), v)) < 1e-10);
      CHECK(vertical_block_sum(c, f) == doctest::Approx(vertical_block_formula(c, r)).epsilon(1e-9).scale(1.0));
      CHECK(horizontal_block_sum(c, f) == doctest::Approx(horizontal_block_formula(c, f)).epsilon(1e-9).scale(1.0));
      ++configurations;
    }
  }
  CHECK(configurations == 200);
  for (auto [r, l] : {std::pair{1, 3}, std::pair{2, 6}, std::pair{1, 7}}) {
    const auto f = synthetic_anti_invariant_frame(r, l, rng);
    REQUIRE(f.n == static_cast<std::size_t>(r + l));
    for (double c : {4.0, -4.0})
      CHECK(frame_scalar_sum(c, f) == doctest::Approx(frame_scalar_formula(c, f)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(frame_scalar_sum(4.0, synthetic_anti_invariant_frame(1, 1, rng)), GeometryError);
}
