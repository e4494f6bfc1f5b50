#include "oneill/identities.hpp"

#include <algorithm>
#include <cmath>

namespace oneill {

namespace {

constexpr std::array<std::string_view, 7> kIdentityNames = {
    "gauss_vertical", "horizontal", "mixed_codazzi", "base_projection", "chen_frame", "tau_decomposition", "master"};

/// P(y)[∂_B C + Γ(B, C)] as a generic field; P is P_V or P_H.
template <class BF, class CF>
auto projected_nabla(const SubmersionScenario& s, bool vertical, BF B, CF C) {
  return [&s, vertical, B, C](const auto& y) {
    using T = typename std::decay_t<decltype(y)>::value_type;
    const std::size_t n = s.total_dim();
    const Vec<T> b = B(y);
    const auto cd = C(seed(y, b));
    const Vec<T> v = la::add(tangents(cd), contract_christoffel(christoffel(s.total, y), b, primals(cd)));
    const Vec<T> P = vertical ? vertical_projector(s, y) : horizontal_projector(s, y);
    return la::matvec(P, v, n, n);
  };
}

/// ∇'_A∇'_B C − ∇'_B∇'_A C − ∇'_{P[A,B]} C at x for the projected connection.
template <class F>
Vec<double> projected_curvature(const SubmersionScenario& s, bool vertical, const Vec<double>& x, F A, F B, F C) {
  const std::size_t n = s.total_dim();
  auto BC = projected_nabla(s, vertical, B, C);
  auto AC = projected_nabla(s, vertical, A, C);
  const Vec<double> t1 = projected_nabla(s, vertical, A, BC)(x);
  const Vec<double> t2 = projected_nabla(s, vertical, B, AC)(x);
  const Vec<double> bracket =
      la::sub(tangents(B(seed(x, A(x)))), tangents(A(seed(x, B(x)))));
  const Vec<double> P = vertical ? vertical_projector(s, x) : horizontal_projector(s, x);
  const Vec<double> pb = la::matvec(P, bracket, n, n);
  auto constant_dir = [pb](const auto& y) {
    using T = typename std::decay_t<decltype(y)>::value_type;
    return lift<T>(pb);
  };
  const Vec<double> t3 = projected_nabla(s, vertical, constant_dir, C)(x);
  return la::sub(la::sub(t1, t2), t3);
}

auto vertical_field(const SubmersionScenario& s, const Vec<double>& a) {
  return [&s, a](const auto& y) {
    using T = typename std::decay_t<decltype(y)>::value_type;
    const std::size_t n = s.total_dim();
    return la::matvec(vertical_projector<T>(s, y), lift<T>(a), n, n);
  };
}

auto basic_field(const SubmersionScenario& s, const Vec<double>& base_components) {
  return [&s, base_components](const auto& y) {
    using T = typename std::decay_t<decltype(y)>::value_type;
    return la::matvec(horizontal_lift_matrix<T>(s, y), lift<T>(base_components), s.total_dim(), s.base_dim());
  };
}

Vec<double> hat_vector(const SubmersionScenario& s, const Vec<double>& x, const Vec<double>& a, const Vec<double>& b,
                       const Vec<double>& c) {
  return projected_curvature(s, true, x, vertical_field(s, a), vertical_field(s, b), vertical_field(s, c));
}

Vec<double> star_vector(const SubmersionScenario& s, const Vec<double>& x, const Vec<double>& a,
                        const Vec<double>& b, const Vec<double>& c) {
  const std::size_t n = s.total_dim(), m = s.base_dim();
  const Vec<double> jac = jacobian(s, x);
  return projected_curvature(s, false, x, basic_field(s, la::matvec(jac, a, m, n)),
                             basic_field(s, la::matvec(jac, b, m, n)), basic_field(s, la::matvec(jac, c, m, n)));
}

void require_c(const SubmersionScenario& s) {
  if (!s.space_form_c) throw GeometryError(ErrorCode::MissingC, "scenario '" + s.name + "' declares no space form constant");
}

void require_triple(const OneillSample& sample) {
  if (!sample.has_triple) throw GeometryError(ErrorCode::MissingStructure, "sample carries no B/C tables");
}

double row_norm2(const Vec<double>& table, std::size_t row, std::size_t cols) {
  double acc = 0.0;
  for (std::size_t j = 0; j < cols; ++j) acc += table[row * cols + j] * table[row * cols + j];
  return acc;
}

}  // namespace

std::string_view identity_name(IdentityId id) { return kIdentityNames[static_cast<std::size_t>(id)]; }

IdentityId parse_identity(std::string_view name) {
  for (std::size_t i = 0; i < kIdentityNames.size(); ++i)
    if (kIdentityNames[i] == name) return static_cast<IdentityId>(i);
  throw GeometryError(ErrorCode::UnknownName, "unknown identity '" + std::string(name) + "'");
}

std::vector<IdentityId> all_identities() {
  std::vector<IdentityId> out;
  for (std::size_t i = 0; i < kIdentityNames.size(); ++i) out.push_back(static_cast<IdentityId>(i));
  return out;
}

double identity_tolerance(IdentityId id) {
  switch (id) {
    case IdentityId::gauss_vertical:
    case IdentityId::horizontal: return 1e-7;
    case IdentityId::mixed_codazzi:
    case IdentityId::base_projection:
    case IdentityId::master: return 1e-4;
    case IdentityId::chen_frame: return 1e-10;
    case IdentityId::tau_decomposition: return 1e-9;
  }
  return 1e-7;
}

Vec<double> frame_tensor(const CurvatureTensor& R, const std::vector<Vec<double>>& frame) {
  const std::size_t n = R.n, k = frame.size();
  Vec<double> cur = R.data;
  std::size_t inner = n * n * n;  // trailing coordinate block after the slot being contracted
  std::size_t lead = 1;           // frame-indexed leading slots already done
  for (int slot = 0; slot < 4; ++slot) {
    Vec<double> next(lead * k * inner, 0.0);
    for (std::size_t L = 0; L < lead; ++L)
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t i = 0; i < n; ++i) {
          const double e = frame[a][i];
          if (e == 0.0) continue;
          const double* src = &cur[(L * n + i) * inner];
          double* dst = &next[(L * k + a) * inner];
          for (std::size_t t = 0; t < inner; ++t) dst[t] += e * src[t];
        }
    cur.swap(next);
    lead *= k;
    inner /= n;
  }
  return cur;
}

CurvatureContext make_context(const SubmersionScenario& s, const Point& p) {
  CurvatureContext ctx;
  ctx.scenario = &s;
  ctx.sample = assemble_sample(s, p);
  ctx.split = local_split(s, p.coords);
  const auto& U = ctx.sample.frames.vertical.vectors;
  const auto& X = ctx.sample.frames.horizontal.vectors;
  ctx.frame = U;
  ctx.frame.insert(ctx.frame.end(), X.begin(), X.end());
  ctx.R = frame_tensor(curvature_at(s.total, p), ctx.frame);
  const std::size_t r = U.size(), l = X.size();
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) ctx.TUU.push_back(oneill_T(ctx.split, U[i], U[j]));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) ctx.AXX.push_back(oneill_A(ctx.split, X[i], X[j]));
  return ctx;
}

double hat_curvature_at(const CurvatureContext& ctx, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  const std::size_t r = ctx.r();
  auto T = [&](std::size_t a, std::size_t b) -> const Vec<double>& { return ctx.TUU[a * r + b]; };
  return ctx.ambient(i, j, k, l) - ctx.g(T(i, k), T(j, l)) + ctx.g(T(j, k), T(i, l));
}

double star_curvature_at(const CurvatureContext& ctx, std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  const std::size_t r = ctx.r(), L = ctx.l();
  auto A = [&](std::size_t a, std::size_t b) -> const Vec<double>& { return ctx.AXX[a * L + b]; };
  return ctx.ambient(r + i, r + j, r + k, r + l) - 2.0 * ctx.g(A(i, j), A(k, l)) + ctx.g(A(j, k), A(i, l)) -
         ctx.g(A(i, k), A(j, l));
}

double hat_curvature_intrinsic(const SubmersionScenario& s, const Point& p, const Vec<double>& a,
                               const Vec<double>& b, const Vec<double>& c, const Vec<double>& d) {
  return la::inner(s.total.metric(p.coords), hat_vector(s, p.coords, a, b, c), d);
}

double star_curvature_intrinsic(const SubmersionScenario& s, const Point& p, const Vec<double>& a,
                                const Vec<double>& b, const Vec<double>& c, const Vec<double>& d) {
  return la::inner(s.total.metric(p.coords), star_vector(s, p.coords, a, b, c), d);
}

double gauss_vertical_residual(const CurvatureContext& ctx) {
  const auto& U = ctx.sample.frames.vertical.vectors;
  const std::size_t r = U.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      for (std::size_t k = 0; k < r; ++k) {
        const Vec<double> v = hat_vector(*ctx.scenario, ctx.sample.point.coords, U[i], U[j], U[k]);
        for (std::size_t l = 0; l < r; ++l)
          worst = std::max(worst, std::abs(ctx.g(v, U[l]) - hat_curvature_at(ctx, i, j, k, l)));
      }
  // diagonal pairs vanish on both sides by antisymmetry
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k < r; ++k)
      for (std::size_t l = 0; l < r; ++l) worst = std::max(worst, std::abs(hat_curvature_at(ctx, i, i, k, l)));
  return worst;
}

double gauss_horizontal_residual(const CurvatureContext& ctx) {
  const auto& X = ctx.sample.frames.horizontal.vectors;
  const std::size_t l = X.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = i + 1; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k) {
        const Vec<double> v = star_vector(*ctx.scenario, ctx.sample.point.coords, X[i], X[j], X[k]);
        for (std::size_t q = 0; q < l; ++q)
          worst = std::max(worst, std::abs(ctx.g(v, X[q]) - star_curvature_at(ctx, i, j, k, q)));
      }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < l; ++k)
      for (std::size_t q = 0; q < l; ++q) worst = std::max(worst, std::abs(star_curvature_at(ctx, i, i, k, q)));
  return worst;
}

double mixed_codazzi_residual(const CurvatureContext& ctx, double h) {
  const SubmersionScenario& s = *ctx.scenario;
  const Vec<double>& x = ctx.sample.point.coords;
  const auto& U = ctx.sample.frames.vertical.vectors;
  const auto& X = ctx.sample.frames.horizontal.vectors;
  const std::size_t r = U.size(), l = X.size();
  const LocalSplit& ls = ctx.split;
  auto Gamma = [&](const Vec<double>& a, const Vec<double>& b) { return contract_christoffel(ls.gamma, a, b); };

  // split data at x ± hE for every frame direction E
  std::vector<LocalSplit> plus, minus;
  for (const auto& E : ctx.frame) {
    plus.push_back(local_split(s, la::axpy(x, h, E)));
    minus.push_back(local_split(s, la::axpy(x, -h, E)));
  }
  // (∇_E K)(F, G) for K = T or A, constant-component F and G
  auto nabla_tensor = [&](bool is_T, std::size_t e, const Vec<double>& F, const Vec<double>& G) {
    auto K = [&](const LocalSplit& at, const Vec<double>& a, const Vec<double>& b) {
      return is_T ? oneill_T(at, a, b) : oneill_A(at, a, b);
    };
    const Vec<double>& E = ctx.frame[e];
    Vec<double> d = la::scale(la::sub(K(plus[e], F, G), K(minus[e], F, G)), 1.0 / (2.0 * h));
    d = la::add(d, Gamma(E, K(ls, F, G)));
    d = la::sub(d, K(ls, Gamma(E, F), G));
    d = la::sub(d, K(ls, F, Gamma(E, G)));
    return d;
  };

  double worst = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t j = 0; j < l; ++j)
        for (std::size_t b = 0; b < r; ++b) {
          const Vec<double>&Xi = X[i], &V = U[a], &Y = X[j], &W = U[b];
          const double rhs = ctx.g(nabla_tensor(true, r + i, V, W), Y) + ctx.g(nabla_tensor(false, a, Xi, Y), W) -
                             ctx.g(oneill_T(ls, V, Xi), oneill_T(ls, W, Y)) +
                             ctx.g(oneill_A(ls, Y, W), oneill_A(ls, Xi, V));
          worst = std::max(worst, std::abs(ctx.ambient(r + i, a, b, r + j) - rhs));
        }
  return worst;
}

double base_projection_residual(const CurvatureContext& ctx) {
  const SubmersionScenario& s = *ctx.scenario;
  const Vec<double>& x = ctx.sample.point.coords;
  const std::size_t n = s.total_dim(), m = s.base_dim(), l = ctx.l();
  const Vec<double> y = s.map(x);
  std::vector<Vec<double>> pushed;
  for (const auto& X : ctx.sample.frames.horizontal.vectors) pushed.push_back(la::matvec(ctx.split.jac, X, m, n));
  const Vec<double> Rb = frame_tensor(curvature_at(s.base, {y}), pushed);
  double worst = 0.0;
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j)
      for (std::size_t k = 0; k < l; ++k)
        for (std::size_t q = 0; q < l; ++q)
          worst = std::max(worst, std::abs(Rb[((i * l + j) * l + k) * l + q] - star_curvature_at(ctx, i, j, k, q)));
  return worst;
}

ChenFrameResult chen_frame_identity(const Vec<double>& T, std::size_t r, std::size_t l) {
  if (r == 0 || l == 0 || T.size() != r * r * l)
    throw GeometryError(ErrorCode::ShapeMismatch, "T table must have r*r*l entries");
  auto t = [&](std::size_t i, std::size_t j, std::size_t s) { return T[(i * r + j) * l + s]; };
  ChenFrameResult out;
  double trace2 = 0.0, split2 = 0.0, first_row = 0.0, minors = 0.0;
  for (std::size_t s = 0; s < l; ++s) {
    double tr = 0.0, dif = t(0, 0, s);
    for (std::size_t i = 0; i < r; ++i) {
      tr += t(i, i, s);
      if (i > 0) dif -= t(i, i, s);
      for (std::size_t j = 0; j < r; ++j) out.lhs += t(i, j, s) * t(i, j, s);
    }
    trace2 += tr * tr;
    split2 += dif * dif;
    for (std::size_t j = 1; j < r; ++j) first_row += t(0, j, s) * t(0, j, s);
    for (std::size_t i = 1; i < r; ++i)
      for (std::size_t j = i + 1; j < r; ++j) minors += t(i, i, s) * t(j, j, s) - t(i, j, s) * t(i, j, s);
  }
  out.rhs = 0.5 * trace2 + 0.5 * split2 + 2.0 * first_row - 2.0 * minors;
  out.rhs_printed = 0.5 * trace2 + split2 + 2.0 * first_row - 2.0 * minors;
  out.residual = std::abs(out.lhs - out.rhs);
  out.printed_residual = std::abs(out.lhs - out.rhs_printed);
  return out;
}

DistributionCurvatures distribution_scalars(const CurvatureContext& ctx) {
  const SubmersionScenario& s = *ctx.scenario;
  require_c(s);
  require_triple(ctx.sample);
  const double c = *s.space_form_c;
  const std::size_t r = ctx.r(), l = ctx.l(), n = ctx.dim();
  const Vec<double> g = ctx.split.g;
  const TripleAt J = s.triple->at(ctx.sample.point.coords);
  const SpaceFormModel model{c};
  auto M = [&](std::size_t a, std::size_t b) {
    return model_curvature(model, g, J, ctx.frame[a], ctx.frame[b], ctx.frame[b], ctx.frame[a]);
  };

  DistributionCurvatures dc;
  dc.hat_ric.assign(r, 0.0);
  dc.hat_ric_model.assign(r, 0.0);
  dc.star_ric.assign(l, 0.0);
  dc.star_ric_model.assign(l, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const double hat = hat_curvature_at(ctx, i, j, j, i);
      dc.hat_ric[i] += hat;
      dc.hat_ric_model[i] += hat - ctx.ambient(i, j, j, i) + M(i, j);
    }
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      const double star = star_curvature_at(ctx, i, j, j, i);
      dc.star_ric[i] += star;
      dc.star_ric_model[i] += star - ctx.ambient(r + i, r + j, r + j, r + i) + M(r + i, r + j);
    }
  for (double v : dc.hat_ric) dc.hat_tau += v;
  for (double v : dc.star_ric) dc.star_tau += v;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) dc.ambient_tau += ctx.ambient(a, b, b, a);
  for (std::size_t i = 0; i < r; ++i)
    dc.route_discrepancy = std::max(dc.route_discrepancy, std::abs(dc.hat_ric[i] - dc.hat_ric_model[i]));
  for (std::size_t i = 0; i < l; ++i)
    dc.route_discrepancy = std::max(dc.route_discrepancy, std::abs(dc.star_ric[i] - dc.star_ric_model[i]));
  return dc;
}

double space_form_tau(double c, const OneillSample& sample) {
  require_triple(sample);
  const double n = static_cast<double>(sample.r + sample.l);
  double acc = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t i = 0; i < sample.l; ++i)
      acc += row_norm2(sample.C[a], i, sample.l) + 2.0 * row_norm2(sample.B[a], i, sample.r);
  return 0.25 * c * (n * (n - 1.0) + 3.0 * acc);
}

double tau_decomposition_residual(const CurvatureContext& ctx, const DistributionCurvatures& dc) {
  require_c(*ctx.scenario);
  return std::abs(dc.ambient_tau - space_form_tau(*ctx.scenario->space_form_c, ctx.sample));
}

MasterIdentity master_identity(const CurvatureContext& ctx, const DistributionCurvatures& dc) {
  require_c(*ctx.scenario);
  const OneillSample& smp = ctx.sample;
  require_triple(smp);
  const double c = *ctx.scenario->space_form_c;
  const double r = static_cast<double>(smp.r), n = static_cast<double>(smp.r + smp.l);
  double b_term = 0.0, c_fixed = 0.0, c_summed = 0.0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t i = 0; i < smp.l; ++i) {
      b_term += 6.0 * row_norm2(smp.B[a], i, smp.r);
      c_summed += 3.0 * row_norm2(smp.C[a], i, smp.l);
    }
    c_fixed += 3.0 * row_norm2(smp.C[a], 0, smp.l);
  }
  MasterIdentity out;
  out.lhs_fixed = 0.25 * c * (n * (n - 1.0) + b_term + c_fixed);
  out.lhs_summed = 0.25 * c * (n * (n - 1.0) + b_term + c_summed);
  const auto& nm = smp.norms;
  out.rhs = dc.hat_tau + dc.star_tau + r * r * smp.H_norm2 - nm.T_H + 3.0 * nm.A_V - 2.0 * smp.deltaN + 2.0 * nm.T_V -
            2.0 * nm.A_H;
  out.rhs_signed = dc.hat_tau + dc.star_tau - r * r * smp.H_norm2 + nm.T_H - 3.0 * nm.A_V + 2.0 * smp.deltaN -
                   2.0 * nm.T_V + 2.0 * nm.A_H;
  out.residual_signed = std::abs(out.lhs_summed - out.rhs_signed);
  out.residual_fixed = std::abs(out.lhs_fixed - out.rhs);
  out.residual_summed = std::abs(out.lhs_summed - out.rhs);
  return out;
}

std::vector<IdentityResidualReport> identity_reports_at(const SubmersionScenario& s, const Point& p,
                                                         const std::vector<IdentityId>& ids) {
  const CurvatureContext ctx = make_context(s, p);
  const bool scalar_ok = s.space_form_c.has_value() && ctx.sample.has_triple;
  std::optional<DistributionCurvatures> dc;
  if (scalar_ok) dc = distribution_scalars(ctx);
  std::vector<IdentityResidualReport> out;
  for (IdentityId id : ids) {
    IdentityResidualReport rep;
    rep.id = id;
    rep.tolerance = identity_tolerance(id);
    rep.samples = 1;
    switch (id) {
      case IdentityId::gauss_vertical: rep.max_residual = gauss_vertical_residual(ctx); break;
      case IdentityId::horizontal: rep.max_residual = gauss_horizontal_residual(ctx); break;
      case IdentityId::mixed_codazzi: rep.max_residual = mixed_codazzi_residual(ctx); break;
      case IdentityId::base_projection: rep.max_residual = base_projection_residual(ctx); break;
      case IdentityId::chen_frame: rep.max_residual = chen_frame_identity(ctx.sample.T, ctx.r(), ctx.l()).residual; break;
      case IdentityId::tau_decomposition:
        if (!scalar_ok) continue;
        rep.max_residual = tau_decomposition_residual(ctx, *dc);
        break;
      case IdentityId::master:
        if (!scalar_ok) continue;
        rep.max_residual = master_identity(ctx, *dc).residual_fixed;
        break;
    }
    rep.pass = std::isfinite(rep.max_residual) && rep.max_residual < rep.tolerance;
    out.push_back(rep);
  }
  return out;
}

// --- synthetic frames ----------------------------------------------------------

SyntheticFrame synthetic_anti_invariant_frame(std::size_t r, std::size_t l, Sampler& rng, std::size_t dim) {
  const std::size_t m = std::max({r, (r + l + 3) / 4, dim / 4, std::size_t{1}});
  const std::size_t n = 4 * m;
  if (4 * r > n || r + l > n)
    throw GeometryError(ErrorCode::PreconditionFailed, "no anti-invariant frame of that shape fits");
  SyntheticFrame f;
  f.n = n;
  Vec<double> S = la::identity<double>(n);
  const double spread = 0.6 / std::sqrt(static_cast<double>(n));  // keeps S well conditioned
  for (double& v : S) v += spread * rng.normal();
  const Vec<double> Sinv = la::inverse(S, n);
  f.g = la::matmul(la::transpose(Sinv, n, n), Sinv, n, n, n);
  const TripleAt J0 = make_standard_triple(make_euclidean(n)).at(Vec<double>(n, 0.0));
  for (std::size_t a = 0; a < 3; ++a) f.J[a] = la::matmul(S, la::matmul(J0[a], Sinv, n, n, n), n, n, n);

  std::vector<Vec<double>> span;  // g-orthonormal: U_j and J_α U_j
  auto orthonormalize = [&](Vec<double> v, const std::vector<Vec<double>>& against) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : against) v = la::axpy(v, -la::inner(f.g, e, v), e);
    return la::scale(v, 1.0 / std::sqrt(la::inner(f.g, v, v)));
  };
  for (std::size_t i = 0; i < r; ++i) {
    const Vec<double> u = orthonormalize(rng.normal_vector(n), span);
    f.U.push_back(u);
    span.push_back(u);
    for (const auto& j : f.J) span.push_back(la::matvec(j, u, n, n));
  }
  std::vector<Vec<double>> taken = f.U;
  for (std::size_t i = 0; i < l; ++i) {
    const Vec<double> x = orthonormalize(rng.normal_vector(n), taken);
    f.X.push_back(x);
    taken.push_back(x);
  }
  return f;
}

namespace {

double sectional_model(double c, const SyntheticFrame& f, const Vec<double>& a, const Vec<double>& b) {
  return model_curvature({c}, f.g, f.J, a, b, b, a);
}

}  // namespace

double vertical_block_sum(double c, const SyntheticFrame& f) {
  double acc = 0.0;
  for (std::size_t i = 1; i < f.U.size(); ++i)
    for (std::size_t j = i + 1; j < f.U.size(); ++j) acc += sectional_model(c, f, f.U[i], f.U[j]);
  return acc;
}

double vertical_block_formula(double c, std::size_t r) {
  const double rr = static_cast<double>(r);
  return c / 8.0 * (rr - 1.0) * (rr - 2.0);
}

double horizontal_block_sum(double c, const SyntheticFrame& f) {
  double acc = 0.0;
  for (std::size_t i = 1; i < f.X.size(); ++i)
    for (std::size_t j = i + 1; j < f.X.size(); ++j) acc += sectional_model(c, f, f.X[i], f.X[j]);
  return acc;
}

double horizontal_block_formula(double c, const SyntheticFrame& f) {
  const std::size_t l = f.X.size();
  const double ll = static_cast<double>(l);
  double csum = 0.0;
  for (const auto& j : f.J)
    for (std::size_t i = 1; i < l; ++i) {
      const Vec<double> jx = la::matvec(j, f.X[i], f.n, f.n);
      for (std::size_t k = i + 1; k < l; ++k) {
        const double v = la::inner(f.g, jx, f.X[k]);
        csum += v * v;
      }
    }
  return c / 4.0 * ((ll - 1.0) * (ll - 2.0) / 2.0 + 3.0 * csum);
}

double frame_scalar_sum(double c, const SyntheticFrame& f) {
  if (f.U.size() + f.X.size() != f.n)
    throw GeometryError(ErrorCode::PreconditionFailed, "scalar curvature needs a full frame");
  std::vector<Vec<double>> all = f.U;
  all.insert(all.end(), f.X.begin(), f.X.end());
  double acc = 0.0;
  for (std::size_t a = 0; a < all.size(); ++a)
    for (std::size_t b = 0; b < all.size(); ++b)
      if (a != b) acc += sectional_model(c, f, all[a], all[b]);
  return acc;
}

double frame_scalar_formula(double c, const SyntheticFrame& f) {
  if (f.U.size() + f.X.size() != f.n)
    throw GeometryError(ErrorCode::PreconditionFailed, "scalar curvature needs a full frame");
  const double n = static_cast<double>(f.n);
  double acc = 0.0;
  for (const auto& j : f.J)
    for (const auto& X : f.X) {
      const Vec<double> jx = la::matvec(j, X, f.n, f.n);
      for (const auto& Y : f.X) acc += std::pow(la::inner(f.g, jx, Y), 2);
      for (const auto& U : f.U) acc += 2.0 * std::pow(la::inner(f.g, jx, U), 2);
    }
  return c / 4.0 * (n * (n - 1.0) + 3.0 * acc);
}

}  // namespace oneill
