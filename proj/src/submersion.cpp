#include "oneill/submersion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace oneill {

namespace {

Vec<double> unit(std::size_t n, std::size_t k) {
  Vec<double> e(n, 0.0);
  e[k] = 1.0;
  return e;
}

void require_total(const SubmersionScenario& s, const Vec<double>& x) {
  if (!s.total.contains(x))
    throw GeometryError(ErrorCode::OutOfDomain, "point outside the total chart of scenario '" + s.name + "'");
}

Vec<double> image_checked(const SubmersionScenario& s, const Vec<double>& x) {
  Vec<double> y = s.map(x);
  if (y.size() != s.base_dim())
    throw GeometryError(ErrorCode::ShapeMismatch, "map of scenario '" + s.name + "' has the wrong output size");
  for (double v : y)
    if (!std::isfinite(v)) throw GeometryError(ErrorCode::NonFinite, "map value is not finite");
  if (!s.base.contains(y))
    throw GeometryError(ErrorCode::OutOfDomain, "image point outside the base chart of scenario '" + s.name + "'");
  return y;
}

std::vector<Vec<double>> projected_basis(const Vec<double>& P, std::size_t n) {
  std::vector<Vec<double>> out;
  for (std::size_t k = 0; k < n; ++k) out.push_back(la::matvec(P, unit(n, k), n, n));
  return out;
}

/// ∂_e P_V = Σ_k e^k ∂_k P_V
Vec<double> projector_derivative(const LocalSplit& ls, const Vec<double>& e) {
  Vec<double> out(ls.n * ls.n, 0.0);
  for (std::size_t k = 0; k < ls.n; ++k)
    if (e[k] != 0.0) out = la::axpy(out, e[k], ls.dPV[k]);
  return out;
}

// Shared body of T and A: `dir` is the already projected differentiation direction.
Vec<double> configuration(const LocalSplit& ls, const Vec<double>& dir, const Vec<double>& F) {
  const std::size_t n = ls.n;
  const Vec<double> dP = projector_derivative(ls, dir);
  const Vec<double> dPF = la::matvec(dP, F, n, n);
  const Vec<double> vF = la::matvec(ls.PV, F, n, n);
  const Vec<double> hF = la::matvec(ls.PH, F, n, n);
  // ∇_dir(P_V F) and ∇_dir(P_H F) for constant-component F
  const Vec<double> nv = la::add(dPF, contract_christoffel(ls.gamma, dir, vF));
  const Vec<double> nh = la::add(la::scale(dPF, -1.0), contract_christoffel(ls.gamma, dir, hF));
  return la::add(la::matvec(ls.PH, nv, n, n), la::matvec(ls.PV, nh, n, n));
}

// Field-extension variant through autodiff of P_V(y) F(y) and P_H(y) F(y).
Vec<double> configuration_field(const SubmersionScenario& s, const Vec<double>& x, const Vec<double>& dir,
                                const VectorField& F) {
  const std::size_t n = s.total_dim();
  auto vfield = [&](const auto& y) {
    using T = typename std::decay_t<decltype(y)>::value_type;
    return la::matvec(vertical_projector<T>(s, y), F.components(y), n, n);
  };
  auto hfield = [&](const auto& y) {
    using T = typename std::decay_t<decltype(y)>::value_type;
    return la::matvec(horizontal_projector<T>(s, y), F.components(y), n, n);
  };
  const Vec<double> PV = vertical_projector<double>(s, x);
  const Vec<double> PH = horizontal_projector<double>(s, x);
  const Vec<double> nv = covariant(s.total, vfield, x, dir);
  const Vec<double> nh = covariant(s.total, hfield, x, dir);
  return la::add(la::matvec(PH, nv, n, n), la::matvec(PV, nh, n, n));
}

Vec<double> vertical_frame_vectors_sum(const LocalSplit& ls, std::size_t r) {
  const auto frame = pivoted_gram_schmidt(ls.g, projected_basis(ls.PV, ls.n), r);
  if (frame.size() != r) throw GeometryError(ErrorCode::RankDeficient, "vertical space has the wrong dimension");
  Vec<double> N(ls.n, 0.0);
  for (const auto& u : frame) N = la::add(N, oneill_T(ls, u, u));
  return N;
}

double sq_norm(const Vec<double>& g, const Vec<double>& v) { return la::inner(g, v, v); }

}  // namespace

LocalSplit local_split(const SubmersionScenario& s, const Vec<double>& x) {
  LocalSplit ls;
  ls.x = x;
  ls.n = s.total_dim();
  ls.m = s.base_dim();
  ls.g = s.total.metric(x);
  ls.gamma = christoffel(s.total, x);
  ls.jac = jacobian(s, x);
  ls.PH = horizontal_projector(s, x);
  ls.PV = la::sub(la::identity<double>(ls.n), ls.PH);
  ls.dPV.resize(ls.n);
  for (std::size_t k = 0; k < ls.n; ++k) ls.dPV[k] = tangents(vertical_projector(s, seed(x, unit(ls.n, k))));
  return ls;
}

SplitFrames split_at(const SubmersionScenario& s, const Point& p) {
  const Vec<double>& x = p.coords;
  require_total(s, x);
  const Vec<double> y = image_checked(s, x);
  const std::size_t n = s.total_dim(), m = s.base_dim(), r = s.fiber_dim();
  if (m >= n) throw GeometryError(ErrorCode::PreconditionFailed, "base dimension must be below total dimension");

  const Vec<double> jac = jacobian(s, x);
  Eigen::MatrixXd J(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k < n; ++k) J(i, k) = jac[i * n + k];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J);
  const auto& sv = svd.singularValues();
  if (!(sv(m - 1) >= kRankTol * std::max(1.0, sv(0)))) {
    std::ostringstream os;
    os << "differential of '" << s.name << "' has rank below " << m << " (smallest singular value " << sv(m - 1)
       << ")";
    throw GeometryError(ErrorCode::RankDeficient, os.str());
  }

  const Vec<double> g = metric_at(s.total, p);
  SplitFrames out;
  out.projector_H = horizontal_projector(s, x);
  out.projector_V = la::sub(la::identity<double>(n), out.projector_H);
  out.vertical = {p, pivoted_gram_schmidt(g, projected_basis(out.projector_V, n), r)};
  out.horizontal = {p, pivoted_gram_schmidt(g, projected_basis(out.projector_H, n), m)};
  if (out.vertical.size() != r || out.horizontal.size() != m)
    throw GeometryError(ErrorCode::RankDeficient, "could not complete the vertical/horizontal frames");

  const Vec<double> gB = s.base.metric(y);
  std::vector<Vec<double>> pushed;
  for (const auto& X : out.horizontal.vectors) pushed.push_back(la::matvec(jac, X, m, n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      out.isometry_defect =
          std::max(out.isometry_defect, std::abs(la::inner(gB, pushed[i], pushed[j]) - (i == j ? 1.0 : 0.0)));
  if (!(out.isometry_defect <= kIsometryTol)) {
    std::ostringstream os;
    os << "differential of '" << s.name << "' is not an isometry on horizontal vectors (defect "
       << out.isometry_defect << ")";
    throw GeometryError(ErrorCode::NotRiemannian, os.str());
  }
  return out;
}

AntiInvariantCheck check_anti_invariant(const SubmersionScenario& s, const Point& p, const SplitFrames& frames) {
  if (!s.triple) throw GeometryError(ErrorCode::MissingStructure, "scenario '" + s.name + "' has no quaternionic triple");
  const std::size_t n = s.total_dim();
  const TripleAt J = s.triple->at(p.coords);
  const Vec<double> g = s.total.metric(p.coords);
  AntiInvariantCheck out;
  for (const auto& j : J)
    for (const auto& u : frames.vertical.vectors) {
      const Vec<double> ju = la::matvec(j, u, n, n);
      for (const auto& w : frames.vertical.vectors) out.defect = std::max(out.defect, std::abs(la::inner(g, ju, w)));
    }
  out.pass = out.defect < kFrameTol;
  return out;
}

Vec<double> oneill_T(const LocalSplit& ls, const Vec<double>& E, const Vec<double>& F) {
  return configuration(ls, la::matvec(ls.PV, E, ls.n, ls.n), F);
}

Vec<double> oneill_A(const LocalSplit& ls, const Vec<double>& E, const Vec<double>& F) {
  return configuration(ls, la::matvec(ls.PH, E, ls.n, ls.n), F);
}

TangentVector oneill_T_at(const SubmersionScenario& s, const Point& p, const TangentVector& E,
                          const TangentVector& F) {
  require_total(s, p.coords);
  return {p, oneill_T(local_split(s, p.coords), E.components, F.components)};
}

TangentVector oneill_A_at(const SubmersionScenario& s, const Point& p, const TangentVector& E,
                          const TangentVector& F) {
  require_total(s, p.coords);
  return {p, oneill_A(local_split(s, p.coords), E.components, F.components)};
}

TangentVector oneill_T_field(const SubmersionScenario& s, const Point& p, const TangentVector& E,
                             const VectorField& F) {
  require_total(s, p.coords);
  const std::size_t n = s.total_dim();
  const Vec<double> dir = la::matvec(vertical_projector(s, p.coords), E.components, n, n);
  return {p, configuration_field(s, p.coords, dir, F)};
}

TangentVector oneill_A_field(const SubmersionScenario& s, const Point& p, const TangentVector& E,
                             const VectorField& F) {
  require_total(s, p.coords);
  const std::size_t n = s.total_dim();
  const Vec<double> dir = la::matvec(horizontal_projector(s, p.coords), E.components, n, n);
  return {p, configuration_field(s, p.coords, dir, F)};
}

Vec<double> mean_curvature_sum(const SubmersionScenario& s, const Vec<double>& x) {
  return vertical_frame_vectors_sum(local_split(s, x), s.fiber_dim());
}

double horizontal_divergence_N(const SubmersionScenario& s, const Point& p, const SplitFrames& frames, double h) {
  const Vec<double>& x = p.coords;
  const Vec<double> N = mean_curvature_sum(s, x);
  const Vec<double> gamma = christoffel(s.total, x);
  const Vec<double> g = s.total.metric(x);
  double div = 0.0;
  for (const auto& X : frames.horizontal.vectors) {
    const Vec<double> Np = mean_curvature_sum(s, la::axpy(x, h, X));
    const Vec<double> Nm = mean_curvature_sum(s, la::axpy(x, -h, X));
    Vec<double> dN = la::scale(la::sub(Np, Nm), 1.0 / (2.0 * h));
    dN = la::add(dN, contract_christoffel(gamma, X, N));
    div += la::inner(g, dN, X);
  }
  return div;
}

double OneillSample::h(std::size_t s) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < r; ++i) acc += t(i, i, s);
  return acc / static_cast<double>(r);
}

OneillSample assemble_sample(const SubmersionScenario& s, const Point& p) {
  OneillSample out;
  out.point = p;
  out.frames = split_at(s, p);
  out.r = s.fiber_dim();
  out.l = s.base_dim();
  const std::size_t r = out.r, l = out.l, n = s.total_dim();
  const LocalSplit ls = local_split(s, p.coords);
  const auto& U = out.frames.vertical.vectors;
  const auto& X = out.frames.horizontal.vectors;
  const Vec<double>& g = ls.g;

  out.T.assign(r * r * l, 0.0);
  out.N.assign(n, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const Vec<double> v = oneill_T(ls, U[i], U[j]);
      out.norms.T_H += sq_norm(g, v);
      if (i == j) out.N = la::add(out.N, v);
      for (std::size_t k = 0; k < l; ++k) out.T[(i * r + j) * l + k] = la::inner(g, v, X[k]);
    }
  out.H = la::scale(out.N, 1.0 / static_cast<double>(r));
  out.H_norm2 = sq_norm(g, out.H);

  out.A.assign(l * l * r, 0.0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      const Vec<double> v = oneill_A(ls, X[i], X[j]);
      out.norms.A_V += sq_norm(g, v);
      for (std::size_t b = 0; b < r; ++b) out.A[(i * l + j) * r + b] = la::inner(g, v, U[b]);
    }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < r; ++k) {
      out.norms.T_V += sq_norm(g, oneill_T(ls, U[k], X[i]));
      out.norms.A_H += sq_norm(g, oneill_A(ls, X[i], U[k]));
    }

  out.deltaN = horizontal_divergence_N(s, p, out.frames);

  if (s.triple) {
    out.has_triple = true;
    const TripleAt J = s.triple->at(p.coords);
    for (std::size_t a = 0; a < 3; ++a) {
      out.B[a].assign(l * r, 0.0);
      out.C[a].assign(l * l, 0.0);
      for (std::size_t i = 0; i < l; ++i) {
        const Vec<double> jx = la::matvec(J[a], X[i], n, n);
        for (std::size_t k = 0; k < r; ++k) out.B[a][i * r + k] = la::inner(g, jx, U[k]);
        for (std::size_t j = 0; j < l; ++j) out.C[a][i * l + j] = la::inner(g, jx, X[j]);
      }
    }
  }
  return out;
}

FiberFlags classify_fibers(const OneillSample& sample, double tol) {
  double t_max = 0.0, umb = 0.0, a_max = 0.0;
  for (std::size_t i = 0; i < sample.r; ++i)
    for (std::size_t j = 0; j < sample.r; ++j)
      for (std::size_t k = 0; k < sample.l; ++k) {
        const double t = sample.t(i, j, k);
        t_max = std::max(t_max, std::abs(t));
        umb = std::max(umb, std::abs(t - (i == j ? sample.h(k) : 0.0)));
      }
  for (double a : sample.A) a_max = std::max(a_max, std::abs(a));
  return {t_max < tol, umb < tol, a_max < tol};
}

// --- catalog -----------------------------------------------------------------

SubmersionScenario make_flat_linear_r1() {
  SubmersionScenario s;
  s.name = "flat_linear_r1";
  s.total = make_euclidean(4);
  s.triple = builtin_triple("standard_h1");
  s.base = make_euclidean(3);
  s.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{x[1], x[2], x[3]};
  });
  s.box = Box(4, {-2.0, 2.0});
  s.declared = {true, true, true, true};
  s.space_form_c = 0.0;
  return s;
}

SubmersionScenario make_flat_linear_r2() {
  SubmersionScenario s;
  s.name = "flat_linear_r2";
  s.total = make_euclidean(8);
  s.triple = builtin_triple("standard_h2");
  s.base = make_euclidean(6);
  s.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{x[1], x[2], x[3], x[5], x[6], x[7]};
  });
  s.box = Box(8, {-2.0, 2.0});
  s.declared = {true, true, true, true};
  s.space_form_c = 0.0;
  return s;
}

SubmersionScenario make_polar_circles(double lambda) {
  SubmersionScenario s;
  s.name = lambda == 1.0 ? "polar_circles" : "polar_circles_scaled";
  s.total = make_euclidean(4, lambda);
  s.triple = QuaternionicTriple("standard_h1", s.total, SmoothField([t = make_standard_triple(s.total)](const auto& x) {
                                  return t.raw(x);
                                }));
  s.base = make_euclidean(3, lambda);
  s.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{sqrt(x[0] * x[0] + x[1] * x[1]), x[2], x[3]};
  });
  s.box = {{-3.0, 3.0}, {-3.0, 3.0}, {-2.0, 2.0}, {-2.0, 2.0}};
  s.admissible = [](const Vec<double>& x) {
    const double rho = std::hypot(x[0], x[1]);
    return rho >= 0.5 && rho <= 3.0;
  };
  s.declared = {true, false, true, true};
  s.space_form_c = 0.0;
  return s;
}

SubmersionScenario make_hopf() {
  SubmersionScenario s;
  s.name = "hopf";
  s.total = make_sphere3();
  s.base = make_sphere2(0.5);
  // (η, ξ₁, ξ₂) ↦ (θ, φ) = (2η, ξ₁ − ξ₂)
  s.map = SmoothField([](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{2.0 * x[0], x[1] - x[2]};
  });
  s.box = {{0.2, 1.37}, {-3.0, 3.0}, {-3.0, 3.0}};
  s.declared = {false, true, true, false};
  return s;
}

SubmersionScenario builtin_scenario(std::string_view name) {
  if (name == "flat_linear_r1") return make_flat_linear_r1();
  if (name == "flat_linear_r2") return make_flat_linear_r2();
  if (name == "polar_circles") return make_polar_circles();
  if (name == "hopf") return make_hopf();
  throw GeometryError(ErrorCode::UnknownName, "no built-in scenario named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_scenario_names() { return {"flat_linear_r1", "flat_linear_r2", "polar_circles", "hopf"}; }

std::vector<Point> sample_points(const SubmersionScenario& s, std::size_t count, std::uint64_t seed) {
  Sampler rng(seed);
  std::vector<Point> out;
  std::size_t attempts = 0;
  const std::size_t limit = 1000 * std::max<std::size_t>(count, 1);
  while (out.size() < count) {
    if (++attempts > limit)
      throw GeometryError(ErrorCode::PreconditionFailed, "sampling box of '" + s.name + "' rejects almost every draw");
    Vec<double> x = rng.in_box(s.box);
    if (s.accepts(x)) out.push_back({std::move(x)});
  }
  return out;
}

}  // namespace oneill
