#include "oneill/chart.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "oneill/quaternion_algebra.hpp"

namespace oneill {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::DegenerateMetric: return "DegenerateMetric";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotRiemannian: return "NotRiemannian";
    case ErrorCode::MissingStructure: return "MissingStructure";
    case ErrorCode::MissingC: return "MissingC";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::UnknownTheorem: return "UnknownTheorem";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::AllPointsFailed: return "AllPointsFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

void require_domain(const MetricChart& chart, const Vec<double>& x) {
  if (!chart.contains(x)) {
    std::ostringstream os;
    os << "point outside the domain of chart '" << chart.name() << "'";
    throw GeometryError(ErrorCode::OutOfDomain, os.str());
  }
}

void require_finite(const Vec<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x)) throw GeometryError(ErrorCode::NonFinite, what);
}

}  // namespace

double CurvatureTensor::eval(const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
                             const Vec<double>& w) const {
  double acc = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    if (x[a] == 0.0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (y[b] == 0.0) continue;
      const double xy = x[a] * y[b];
      for (std::size_t c = 0; c < n; ++c) {
        if (z[c] == 0.0) continue;
        const double* row = &data[((a * n + b) * n + c) * n];
        double s = 0.0;
        for (std::size_t d = 0; d < n; ++d) s += row[d] * w[d];
        acc += xy * z[c] * s;
      }
    }
  }
  return acc;
}

Vec<double> CurvatureTensor::apply(const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
                                   const Vec<double>& ginv) const {
  Vec<double> lowered(n, 0.0);
  for (std::size_t a = 0; a < n; ++a) {
    if (x[a] == 0.0) continue;
    for (std::size_t b = 0; b < n; ++b) {
      if (y[b] == 0.0) continue;
      for (std::size_t c = 0; c < n; ++c) {
        const double s = x[a] * y[b] * z[c];
        if (s == 0.0) continue;
        const double* row = &data[((a * n + b) * n + c) * n];
        for (std::size_t d = 0; d < n; ++d) lowered[d] += s * row[d];
      }
    }
  }
  return la::matvec(ginv, lowered, n, n);
}

Vec<double> metric_at(const MetricChart& chart, const Point& p) {
  require_domain(chart, p.coords);
  const std::size_t n = chart.dim();
  Vec<double> g = chart.metric(p.coords);
  require_finite(g, "metric components");
  Eigen::MatrixXd m(n, n);
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = g[i * n + j];
      scale = std::max(scale, std::abs(m(i, j)));
    }
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, scale))
    throw GeometryError(ErrorCode::DegenerateMetric, "metric is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(m, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() <= kPositiveDefiniteEps)
    throw GeometryError(ErrorCode::DegenerateMetric, "metric is not positive definite");
  return g;
}

Christoffel christoffel_at(const MetricChart& chart, const Point& p) {
  metric_at(chart, p);
  Christoffel out{chart.dim(), christoffel(chart, p.coords)};
  require_finite(out.data, "Christoffel symbols");
  return out;
}

TangentVector covariant_derivative_at(const MetricChart& chart, const VectorField& field, const TangentVector& x) {
  metric_at(chart, x.base);
  auto f = [&](const auto& pt) { return field.components(pt); };
  Vec<double> out = covariant(chart, f, x.base.coords, x.components);
  require_finite(out, "covariant derivative");
  return {x.base, out};
}

CurvatureTensor curvature_at(const MetricChart& chart, const Point& p) {
  const Vec<double> g = metric_at(chart, p);
  const std::size_t n = chart.dim();
  const Vec<double>& x = p.coords;
  const Vec<double> gamma = christoffel(chart, x);
  // dgamma[i] holds ∂_i Γ^l_jk
  std::vector<Vec<double>> dgamma(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec<double> dir(n, 0.0);
    dir[i] = 1.0;
    dgamma[i] = tangents(christoffel(chart, seed(x, dir)));
  }
  auto G = [&](std::size_t l, std::size_t i, std::size_t j) { return gamma[(l * n + i) * n + j]; };
  // R^l_{kij} = ∂_i Γ^l_jk − ∂_j Γ^l_ik + Γ^l_im Γ^m_jk − Γ^l_jm Γ^m_ik,  R(∂_i,∂_j)∂_k = R^l_{kij} ∂_l
  Vec<double> upper(n * n * n * n, 0.0);  // [i][j][k][l]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          double v = dgamma[i][(l * n + j) * n + k] - dgamma[j][(l * n + i) * n + k];
          for (std::size_t m = 0; m < n; ++m) v += G(l, i, m) * G(m, j, k) - G(l, j, m) * G(m, i, k);
          upper[((i * n + j) * n + k) * n + l] = v;
        }
  CurvatureTensor out{n, Vec<double>(n * n * n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t d = 0; d < n; ++d) {
          double v = 0.0;
          for (std::size_t l = 0; l < n; ++l) v += g[d * n + l] * upper[((i * n + j) * n + k) * n + l];
          out.data[((i * n + j) * n + k) * n + d] = v;
        }
  require_finite(out.data, "curvature tensor");
  return out;
}

double riemann_at(const MetricChart& chart, const Point& p, const Vec<double>& x, const Vec<double>& y,
                  const Vec<double>& z, const Vec<double>& w) {
  return curvature_at(chart, p).eval(x, y, z, w);
}

double inner(const Vec<double>& g, const Vec<double>& u, const Vec<double>& v) { return la::inner(g, u, v); }

double norm(const Vec<double>& g, const Vec<double>& u) { return std::sqrt(std::max(0.0, inner(g, u, u))); }

double sectional(const CurvatureTensor& riem, const Vec<double>& g, const Vec<double>& x, const Vec<double>& y) {
  const double gram = inner(g, x, x) * inner(g, y, y) - inner(g, x, y) * inner(g, x, y);
  if (!(gram >= kPlaneEps)) throw GeometryError(ErrorCode::DegeneratePlane, "vectors span no plane");
  return riem.eval(x, y, y, x) / gram;
}

double sectional_at(const MetricChart& chart, const Point& p, const Vec<double>& x, const Vec<double>& y) {
  const Vec<double> g = metric_at(chart, p);
  const double gram = inner(g, x, x) * inner(g, y, y) - inner(g, x, y) * inner(g, x, y);
  if (!(gram >= kPlaneEps)) throw GeometryError(ErrorCode::DegeneratePlane, "vectors span no plane");
  return sectional(curvature_at(chart, p), g, x, y);
}

std::vector<Vec<double>> gram_schmidt(const Vec<double>& g, const std::vector<Vec<double>>& spanning) {
  std::vector<Vec<double>> out;
  for (const auto& v : spanning) {
    Vec<double> r = v;
    // two passes of modified Gram-Schmidt keep the frame orthonormal to ~1e-15
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& e : out) r = la::axpy(r, -inner(g, e, r), e);
    const double len = norm(g, r);
    if (len < kRankTol) continue;
    out.push_back(la::scale(r, 1.0 / len));
  }
  return out;
}

OrthonormalFrame gram_schmidt(const MetricChart& chart, const Point& p, const std::vector<Vec<double>>& spanning) {
  return {p, gram_schmidt(metric_at(chart, p), spanning)};
}

std::vector<Vec<double>> pivoted_gram_schmidt(const Vec<double>& g, const std::vector<Vec<double>>& spanning,
                                              std::size_t max_vectors) {
  std::vector<Vec<double>> residual = spanning;
  std::vector<bool> used(spanning.size(), false);
  std::vector<Vec<double>> out;
  while (out.size() < max_vectors) {
    std::size_t best = spanning.size();
    double best_len = kRankTol;
    for (std::size_t i = 0; i < residual.size(); ++i) {
      if (used[i]) continue;
      const double len = norm(g, residual[i]);
      // strict comparison with a relative slack keeps ties on the lowest index
      if (len > best_len * (1.0 + 1e-12)) {
        best_len = len;
        best = i;
      }
    }
    if (best == spanning.size()) break;
    used[best] = true;
    Vec<double> e = residual[best];
    for (const auto& f : out) e = la::axpy(e, -inner(g, f, e), f);
    e = la::scale(e, 1.0 / norm(g, e));
    out.push_back(e);
    for (std::size_t i = 0; i < residual.size(); ++i)
      if (!used[i]) residual[i] = la::axpy(residual[i], -inner(g, e, residual[i]), e);
  }
  return out;
}

MetricChart make_euclidean(std::size_t n, double scale, double half_width) {
  const double s2 = scale * scale;
  auto metric = [n, s2](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Vec<T> g(n * n, T(0.0));
    for (std::size_t i = 0; i < n; ++i) g[i * n + i] = T(s2);
    return g;
  };
  auto domain = [n, half_width](const Vec<double>& x) {
    if (x.size() != n) return false;
    return std::all_of(x.begin(), x.end(), [&](double v) { return std::isfinite(v) && std::abs(v) < half_width; });
  };
  std::string name = "euclidean" + std::to_string(n);
  return {name, n, SmoothField(metric), domain};
}

MetricChart make_sphere2(double radius) {
  const double r2 = radius * radius;
  auto metric = [r2](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    T s = sin(x[0]);
    return Vec<T>{T(r2), T(0.0), T(0.0), r2 * s * s};
  };
  auto domain = [](const Vec<double>& x) {
    return x.size() == 2 && x[0] > 1e-6 && x[0] < std::numbers::pi - 1e-6 && std::isfinite(x[1]);
  };
  return {"sphere2", 2, SmoothField(metric), domain};
}

MetricChart make_sphere3() {
  auto metric = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    T c = cos(x[0]);
    T s = sin(x[0]);
    Vec<T> g(9, T(0.0));
    g[0] = T(1.0);
    g[4] = c * c;
    g[8] = s * s;
    return g;
  };
  auto domain = [](const Vec<double>& x) {
    return x.size() == 3 && x[0] > 1e-6 && x[0] < std::numbers::pi / 2 - 1e-6 && std::isfinite(x[1]) &&
           std::isfinite(x[2]);
  };
  return {"sphere3", 3, SmoothField(metric), domain};
}

MetricChart make_hp2_chart() {
  // Homogeneous coordinates (1, q₁, q₂) with lines v·H; the induced metric is
  // [(1+|q|²)|dq|² − |Σ q̄_a dq_a|²] / (1+|q|²)².
  auto metric = [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    constexpr std::size_t n = 8;
    T r2(0.0);
    for (const auto& v : x) r2 += v * v;
    Vec<T> m(4 * n, T(0.0));  // a(e_k) = conj(q_a) e_b as 4 x 8
    for (std::size_t a = 0; a < 2; ++a) {
      Quat<T> qc = qconj(quat_at(x, a));
      for (std::size_t b = 0; b < 4; ++b) {
        Quat<T> e{T(b == 0 ? 1.0 : 0.0), T(b == 1 ? 1.0 : 0.0), T(b == 2 ? 1.0 : 0.0), T(b == 3 ? 1.0 : 0.0)};
        Quat<T> r = qmul(qc, e);
        const std::size_t k = 4 * a + b;
        m[0 * n + k] = r.w;
        m[1 * n + k] = r.x;
        m[2 * n + k] = r.y;
        m[3 * n + k] = r.z;
      }
    }
    T denom = (1.0 + r2) * (1.0 + r2);
    Vec<T> g(n * n, T(0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        T mm(0.0);
        for (std::size_t c = 0; c < 4; ++c) mm += m[c * n + i] * m[c * n + j];
        T v = ((i == j ? 1.0 + r2 : T(0.0)) - mm) / denom;
        g[i * n + j] = v;
        g[j * n + i] = v;
      }
    return g;
  };
  auto domain = [](const Vec<double>& x) {
    return x.size() == 8 && std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v) && std::abs(v) < 1e3; });
  };
  return {"hp2_chart", 8, SmoothField(metric), domain};
}

MetricChart builtin_chart(std::string_view name) {
  if (name == "euclidean3") return make_euclidean(3);
  if (name == "euclidean4") return make_euclidean(4);
  if (name == "euclidean6") return make_euclidean(6);
  if (name == "euclidean8") return make_euclidean(8);
  if (name == "sphere2") return make_sphere2(1.0);
  if (name == "sphere3") return make_sphere3();
  if (name == "hp2_chart") return make_hp2_chart();
  throw GeometryError(ErrorCode::UnknownName, "no built-in chart named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_chart_names() {
  return {"euclidean3", "euclidean4", "euclidean6", "euclidean8", "sphere2", "sphere3", "hp2_chart"};
}

}  // namespace oneill
