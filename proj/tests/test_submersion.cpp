#include <doctest.h>

#include <cmath>

#include "oneill/submersion.hpp"
#include "test_support.hpp"

using namespace oneill;
using testing_support::Rng;

namespace {

std::vector<SubmersionScenario> catalog() {
  std::vector<SubmersionScenario> out;
  for (const auto& name : builtin_scenario_names()) out.push_back(builtin_scenario(name));
  return out;
}

Vec<double> polar_point(double rho, double theta, double a, double b) {
  return {rho * std::cos(theta), rho * std::sin(theta), a, b};
}

// Central-difference derivative of a vector field along v (flat-space oracle).
template <class F>
Vec<double> fd_derivative(const F& field, const Vec<double>& x, const Vec<double>& v, double h = 1e-5) {
  Vec<double> fp = field(la::axpy(x, h, v)), fm = field(la::axpy(x, -h, v));
  return la::scale(la::sub(fp, fm), 1.0 / (2 * h));
}

}  // namespace

TEST_CASE("split_at: linear projections") {
  auto s = make_flat_linear_r1();
  auto f = split_at(s, {{0.3, -1.2, 0.5, 1.9}});
  REQUIRE(f.vertical.size() == 1);
  REQUIRE(f.horizontal.size() == 3);
  CHECK(testing_support::max_abs(la::sub(f.vertical.vectors[0], {1, 0, 0, 0})) < 1e-15);
  for (std::size_t i = 0; i < 3; ++i) {
    Vec<double> e(4, 0.0);
    e[i + 1] = 1.0;
    CHECK(testing_support::max_abs(la::sub(f.horizontal.vectors[i], e)) < 1e-15);
  }
  CHECK(f.isometry_defect < 1e-15);
}

TEST_CASE("split_at: polar circles") {
  auto s = make_polar_circles();
  const double th = 0.7;
  auto x = polar_point(2.0, th, 0.4, -0.3);
  auto f = split_at(s, {x});
  REQUIRE(f.vertical.size() == 1);
  const auto& u = f.vertical.vectors[0];
  Vec<double> tangent{-std::sin(th), std::cos(th), 0, 0};
  CHECK(std::abs(std::abs(la::inner(la::identity<double>(4), u, tangent)) - 1.0) < 1e-12);
  Vec<double> radial{std::cos(th), std::sin(th), 0, 0};
  double best = 0.0;
  for (const auto& X : f.horizontal.vectors) best = std::max(best, std::abs(la::inner(la::identity<double>(4), X, radial)));
  CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
  // projectors: g-symmetric idempotents summing to the identity
  auto P = f.projector_V;
  CHECK(testing_support::max_abs(la::sub(la::matmul(P, P, 4, 4, 4), P)) < 1e-12);
  CHECK(testing_support::max_abs(la::sub(P, la::transpose(P, 4, 4))) < 1e-12);
  CHECK(testing_support::max_abs(la::sub(la::add(f.projector_V, f.projector_H), la::identity<double>(4))) < 1e-15);
}

TEST_CASE("split_at: failure modes") {
  auto s = make_flat_linear_r1();
  s.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{x[1], x[2], x[3] * x[3]};
  });
  try {
    split_at(s, {{0.1, 0.2, 0.3, 0.0}});
    FAIL("expected RankDeficient");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::RankDeficient);
  }
  CHECK_NOTHROW(split_at(s, {{0.1, 0.2, 0.3, 0.5}}) );

  auto stretched = make_flat_linear_r1();
  stretched.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{2.0 * x[1], x[2], x[3]};
  });
  try {
    split_at(stretched, {{0.1, 0.2, 0.3, 0.4}});
    FAIL("expected NotRiemannian");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NotRiemannian);
  }
  try {
    split_at(make_hopf(), {{1.6, 0.0, 0.0}});
    FAIL("expected OutOfDomain");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::OutOfDomain);
  }
}

TEST_CASE("dπ is an isometry on horizontal frames across the catalog") {
  for (const auto& s : catalog())
    for (const auto& p : sample_points(s, 20, 7)) CHECK(split_at(s, p).isometry_defect < 1e-8);
}

TEST_CASE("anti-invariance") {
  auto r1 = make_flat_linear_r1();
  Point p{{0.1, 0.2, 0.3, 0.4}};
  CHECK(check_anti_invariant(r1, p, split_at(r1, p)).pass);

  auto r2 = make_flat_linear_r2();
  Point q{Vec<double>(8, 0.25)};
  auto f2 = split_at(r2, q);
  CHECK(check_anti_invariant(r2, q, f2).pass);
  // J-images of the two vertical vectors fill the horizontal space
  std::vector<Vec<double>> images;
  for (const auto& j : r2.triple->at(q.coords))
    for (const auto& u : f2.vertical.vectors) images.push_back(la::matvec(j, u, 8, 8));
  CHECK(gram_schmidt(la::identity<double>(8), images).size() == 6);

  auto bad = make_flat_linear_r2();
  bad.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{x[2], x[3], x[4], x[5], x[6], x[7]};
  });
  auto fb = split_at(bad, q);
  auto chk = check_anti_invariant(bad, q, fb);
  CHECK_FALSE(chk.pass);
  CHECK(chk.defect == doctest::Approx(1.0));

  auto hopf = make_hopf();
  Point h{{0.7, 0.1, 0.2}};
  try {
    check_anti_invariant(hopf, h, split_at(hopf, h));
    FAIL("expected MissingStructure");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::MissingStructure);
  }
}

TEST_CASE("T on polar circles: circle of radius ρ has curvature 1/ρ") {
  auto s = make_polar_circles();
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const double rho = rng.uniform(0.6, 2.9), th = rng.uniform(-3, 3);
    auto x = polar_point(rho, th, rng.uniform(-1, 1), rng.uniform(-1, 1));
    Vec<double> u{-std::sin(th), std::cos(th), 0, 0};
    auto t = oneill_T_at(s, {x}, {{x}, u}, {{x}, u});
    // oracle: ∇_U U of the unit angular field by central differences
    auto field = [](const Vec<double>& y) {
      const double r = std::hypot(y[0], y[1]);
      return Vec<double>{-y[1] / r, y[0] / r, 0, 0};
    };
    auto oracle = fd_derivative(field, x, u);
    CHECK(testing_support::max_abs(la::sub(t.components, oracle)) < 1e-8);
    Vec<double> expected{-std::cos(th) / rho, -std::sin(th) / rho, 0, 0};
    CHECK(testing_support::max_abs(la::sub(t.components, expected)) < 1e-12);
  }
  auto x = polar_point(2.0, 0.3, 0, 0);
  Vec<double> u{-std::sin(0.3), std::cos(0.3), 0, 0};
  auto t = oneill_T_at(s, {x}, {{x}, u}, {{x}, u});
  CHECK(std::sqrt(la::inner(la::identity<double>(4), t.components, t.components)) == doctest::Approx(0.5));
}

TEST_CASE("T and A vanish on the wrong argument types") {
  Rng rng(19);
  for (const auto& s : catalog()) {
    for (const auto& p : sample_points(s, 5, 3)) {
      auto f = split_at(s, p);
      auto ls = local_split(s, p.coords);
      for (const auto& X : f.horizontal.vectors)
        CHECK(testing_support::max_abs(oneill_T(ls, X, rng.normal_vector(s.total_dim()))) < 1e-14);
      for (const auto& U : f.vertical.vectors)
        CHECK(testing_support::max_abs(oneill_A(ls, U, rng.normal_vector(s.total_dim()))) < 1e-14);
    }
  }
}

TEST_CASE("A on the Hopf fibration matches half the vertical bracket") {
  auto s = make_hopf();
  Rng rng(29);
  // orthonormal horizontal fields in Hopf coordinates and the unit vertical field
  auto X1 = [](const Vec<double>&) { return Vec<double>{1, 0, 0}; };
  auto X2 = [](const Vec<double>& y) {
    const double c = std::cos(y[0]), sn = std::sin(y[0]);
    return Vec<double>{0, sn / c, -c / sn};
  };
  const Vec<double> V{0, 1, 1};
  for (int trial = 0; trial < 10; ++trial) {
    Vec<double> x{rng.uniform(0.25, 1.3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
    Vec<double> bracket = la::sub(fd_derivative(X2, x, X1(x)), fd_derivative(X1, x, X2(x)));
    auto g = s.total.metric(x);
    const double half_vertical = 0.5 * std::abs(la::inner(g, bracket, V));
    auto a = oneill_A_at(s, {x}, {{x}, X1(x)}, {{x}, X2(x)});
    CHECK(std::sqrt(la::inner(g, a.components, a.components)) == doctest::Approx(half_vertical).epsilon(1e-7));
    CHECK(half_vertical == doctest::Approx(1.0).epsilon(1e-7));
    // A_X Y = ½ V[X, Y] including the sign
    CHECK(la::inner(g, a.components, V) == doctest::Approx(0.5 * la::inner(g, bracket, V)).epsilon(1e-7));
  }
}

TEST_CASE("tensoriality in F") {
  Rng rng(37);
  for (const auto& s : catalog()) {
    const std::size_t n = s.total_dim();
    for (const auto& p : sample_points(s, 4, 5)) {
      Vec<double> E = rng.normal_vector(n), F = rng.normal_vector(n), M = rng.normal_vector(n * n);
      const Vec<double> x0 = p.coords;
      // F + M(y − x₀) + quadratic bump, equal to F at x₀
      VectorField ext{SmoothField([F, M, x0, n](const auto& y) {
        using T = typename std::decay_t<decltype(y)>::value_type;
        Vec<T> out(n);
        for (std::size_t a = 0; a < n; ++a) {
          T v(F[a]);
          for (std::size_t b = 0; b < n; ++b) v += M[a * n + b] * (y[b] - x0[b]);
          v += sin(y[a] - x0[a]) * (y[0] - x0[0]);
          out[a] = v;
        }
        return out;
      })};
      auto t0 = oneill_T_at(s, p, {p, E}, {p, F});
      auto t1 = oneill_T_field(s, p, {p, E}, ext);
      CHECK(testing_support::max_abs(la::sub(t0.components, t1.components)) < 1e-7);
      auto a0 = oneill_A_at(s, p, {p, E}, {p, F});
      auto a1 = oneill_A_field(s, p, {p, E}, ext);
      CHECK(testing_support::max_abs(la::sub(a0.components, a1.components)) < 1e-7);
    }
  }
}

TEST_CASE("skew-adjointness of T_E and A_E") {
  Rng rng(41);
  for (const auto& s : catalog()) {
    const std::size_t n = s.total_dim();
    for (const auto& p : sample_points(s, 5, 9)) {
      auto ls = local_split(s, p.coords);
      for (int k = 0; k < 3; ++k) {
        Vec<double> E = rng.normal_vector(n), F = rng.normal_vector(n), G = rng.normal_vector(n);
        const double t = la::inner(ls.g, oneill_T(ls, E, F), G) + la::inner(ls.g, F, oneill_T(ls, E, G));
        const double a = la::inner(ls.g, oneill_A(ls, E, F), G) + la::inner(ls.g, F, oneill_A(ls, E, G));
        CHECK(std::abs(t) < 1e-7);
        CHECK(std::abs(a) < 1e-7);
      }
    }
  }
}

TEST_CASE("component tables: symmetry of T, alternation of A") {
  for (const auto& s : catalog()) {
    for (const auto& p : sample_points(s, 10, 21)) {
      auto smp = assemble_sample(s, p);
      for (std::size_t i = 0; i < smp.r; ++i)
        for (std::size_t j = 0; j < smp.r; ++j)
          for (std::size_t k = 0; k < smp.l; ++k) CHECK(std::abs(smp.t(i, j, k) - smp.t(j, i, k)) < 1e-8);
      for (std::size_t i = 0; i < smp.l; ++i)
        for (std::size_t j = 0; j < smp.l; ++j)
          for (std::size_t b = 0; b < smp.r; ++b) CHECK(std::abs(smp.a(i, j, b) + smp.a(j, i, b)) < 1e-8);
      CHECK(smp.norms.T_V >= 0.0);
      CHECK(smp.norms.T_H >= 0.0);
      CHECK(smp.norms.A_V >= 0.0);
      CHECK(smp.norms.A_H >= 0.0);
      // N = Σ T_{U_j}U_j recomputed through the public entry point
      CHECK(testing_support::max_abs(la::sub(smp.N, mean_curvature_sum(s, p.coords))) < 1e-12);
      CHECK(testing_support::max_abs(la::sub(smp.H, la::scale(smp.N, 1.0 / smp.r))) < 1e-15);
    }
  }
}

TEST_CASE("basic horizontal fields: H∇_V X = A_X V") {
  for (const auto& s : catalog()) {
    const std::size_t n = s.total_dim(), m = s.base_dim();
    Rng rng(43);
    for (const auto& p : sample_points(s, 4, 17)) {
      auto f = split_at(s, p);
      Vec<double> v = rng.normal_vector(m);
      auto basic = [&](const auto& y) {
        using T = typename std::decay_t<decltype(y)>::value_type;
        return la::matvec(horizontal_lift_matrix<T>(s, y), lift<T>(v), n, m);
      };
      const Vec<double> X = basic(p.coords);
      for (const auto& U : f.vertical.vectors) {
        Vec<double> nabla = covariant(s.total, basic, p.coords, U);
        Vec<double> lhs = la::matvec(f.projector_H, nabla, n, n);
        auto rhs = oneill_A_at(s, p, {p, X}, {p, U});
        CHECK(testing_support::max_abs(la::sub(lhs, rhs.components)) < 1e-7);
      }
    }
  }
}

TEST_CASE("assemble_sample: flat_linear_r1") {
  auto s = make_flat_linear_r1();
  auto smp = assemble_sample(s, {{0.5, -0.5, 1.0, 1.5}});
  CHECK(testing_support::max_abs(smp.T) == 0.0);
  CHECK(testing_support::max_abs(smp.A) == 0.0);
  CHECK(smp.deltaN == 0.0);
  CHECK(smp.norms.T_V == 0.0);
  CHECK(smp.norms.T_H == 0.0);
  CHECK(smp.norms.A_V == 0.0);
  CHECK(smp.norms.A_H == 0.0);
  REQUIRE(smp.has_triple);
  // left multiplication by i: e₂ ↦ −e₁, e₃ ↦ e₄, e₄ ↦ −e₃
  CHECK(smp.b(0, 0, 0) == doctest::Approx(-1.0));
  CHECK(smp.c(0, 1, 2) == doctest::Approx(1.0));
  CHECK(smp.c(0, 2, 1) == doctest::Approx(-1.0));
  // by j: e₄ ↦ e₂; by k: e₂ ↦ e₃
  CHECK(smp.c(1, 2, 0) == doctest::Approx(1.0));
  CHECK(smp.c(2, 0, 1) == doctest::Approx(1.0));
  double bsum = 0.0;
  for (const auto& b : smp.B)
    for (double v : b) bsum += v * v;
  CHECK(bsum == doctest::Approx(3.0));
  auto flags = classify_fibers(smp);
  CHECK(flags.totally_geodesic);
  CHECK(flags.umbilical);
  CHECK(flags.horizontal_integrable);
}

TEST_CASE("assemble_sample: polar circles hand values") {
  auto s = make_polar_circles();
  Rng rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    const double rho = rng.uniform(0.6, 2.9);
    auto smp = assemble_sample(s, {polar_point(rho, rng.uniform(-3, 3), rng.uniform(-1, 1), rng.uniform(-1, 1))});
    const double k = 1.0 / (rho * rho);
    CHECK(smp.norms.T_H == doctest::Approx(k).epsilon(1e-12));
    CHECK(smp.norms.T_V == doctest::Approx(k).epsilon(1e-12));
    CHECK(smp.H_norm2 == doctest::Approx(k).epsilon(1e-12));
    CHECK(smp.deltaN == doctest::Approx(k).epsilon(1e-6));
    CHECK(smp.norms.A_V < 1e-20);
    CHECK(smp.norms.A_H < 1e-20);
    auto flags = classify_fibers(smp);
    CHECK_FALSE(flags.totally_geodesic);
    CHECK(flags.umbilical);
    CHECK(flags.horizontal_integrable);
  }
  auto smp = assemble_sample(s, {polar_point(2.0, 1.1, 0.2, 0.3)});
  CHECK(smp.norms.T_H == doctest::Approx(0.25));
  CHECK(smp.H_norm2 == doctest::Approx(0.25));
  CHECK(smp.deltaN == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("assemble_sample: Hopf") {
  auto s = make_hopf();
  for (const auto& p : sample_points(s, 10, 53)) {
    auto smp = assemble_sample(s, p);
    CHECK_FALSE(smp.has_triple);
    CHECK(testing_support::max_abs(smp.T) < 1e-12);
    CHECK(smp.norms.A_V == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(smp.norms.A_H == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(smp.deltaN) < 1e-8);
    auto flags = classify_fibers(smp);
    CHECK(flags.totally_geodesic);
    CHECK(flags.umbilical);
    CHECK_FALSE(flags.horizontal_integrable);
  }
}

TEST_CASE("declared flags agree with classification on the catalog") {
  for (const auto& s : catalog())
    for (const auto& p : sample_points(s, 10, 61)) {
      auto flags = classify_fibers(assemble_sample(s, p));
      CHECK(flags.totally_geodesic == s.declared.totally_geodesic_fibers);
      CHECK(flags.umbilical == s.declared.umbilical_fibers);
      CHECK(flags.horizontal_integrable == s.declared.horizontal_integrable);
      if (s.triple) CHECK(check_anti_invariant(s, p, split_at(s, p)).pass == s.declared.anti_invariant);
    }
}

TEST_CASE("sampling is deterministic and respects the admissible region") {
  auto s = make_polar_circles();
  auto a = sample_points(s, 50, 99), b = sample_points(s, 50, 99);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].coords == b[i].coords);
    const double rho = std::hypot(a[i].coords[0], a[i].coords[1]);
    CHECK(rho >= 0.5);
    CHECK(rho <= 3.0);
  }
  CHECK_THROWS_AS(builtin_scenario("hp3"), GeometryError);
}
