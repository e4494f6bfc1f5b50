#pragma once

// Coordinate charts with smooth metrics, Levi-Civita connection and curvature.
//
// Curvature convention (used everywhere in the library):
//   R(X,Y)Z = ∇_X ∇_Y Z − ∇_Y ∇_X Z − ∇_[X,Y] Z,   R(X,Y,Z,W) = g(R(X,Y)Z, W),
// so the sectional curvature is R(X,Y,Y,X)/|X∧Y|² and the unit sphere gives +1.

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "oneill/error.hpp"
#include "oneill/field.hpp"
#include "oneill/linalg.hpp"

namespace oneill {

inline constexpr double kFrameTol = 1e-9;
inline constexpr double kPositiveDefiniteEps = 1e-12;
inline constexpr double kRankTol = 1e-9;
inline constexpr double kPlaneEps = 1e-12;

struct Point {
  Vec<double> coords;

  std::size_t dim() const { return coords.size(); }
};

struct TangentVector {
  Point base;
  Vec<double> components;
};

using DomainPredicate = std::function<bool(const Vec<double>&)>;

class MetricChart {
 public:
  MetricChart() = default;
  MetricChart(std::string name, std::size_t dim, SmoothField metric, DomainPredicate domain)
      : name_(std::move(name)), dim_(dim), metric_(std::move(metric)), domain_(std::move(domain)) {}

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  bool contains(const Vec<double>& x) const { return x.size() == dim_ && (!domain_ || domain_(x)); }

  /// Raw metric components g_ij (row-major), no domain or definiteness checks.
  template <class T>
  Vec<T> metric(const Vec<T>& x) const {
    return metric_(x);
  }

  const SmoothField& metric_field() const { return metric_; }

 private:
  std::string name_;
  std::size_t dim_ = 0;
  SmoothField metric_;
  DomainPredicate domain_;
};

/// A vector field given by its coordinate components, differentiable through
/// the dual scalar levels.
struct VectorField {
  SmoothField components;
};

struct OrthonormalFrame {
  Point base;
  std::vector<Vec<double>> vectors;

  std::size_t size() const { return vectors.size(); }
};

/// Christoffel symbols Γ^k_ij stored at [k*n*n + i*n + j].
struct Christoffel {
  std::size_t n = 0;
  Vec<double> data;

  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return data[(k * n + i) * n + j]; }
};

/// Fully lowered curvature R(∂a,∂b,∂c,∂d) at one point.
struct CurvatureTensor {
  std::size_t n = 0;
  Vec<double> data;

  double operator()(std::size_t a, std::size_t b, std::size_t c, std::size_t d) const {
    return data[((a * n + b) * n + c) * n + d];
  }
  double eval(const Vec<double>& x, const Vec<double>& y, const Vec<double>& z, const Vec<double>& w) const;
  /// Components of R(X,Y)Z with the last slot raised by the given inverse metric.
  Vec<double> apply(const Vec<double>& x, const Vec<double>& y, const Vec<double>& z,
                    const Vec<double>& ginv) const;
};

// --- generic kernels ------------------------------------------------------

/// Γ^k_ij at x, differentiating the metric one dual level above T.
template <class T>
Vec<T> christoffel(const MetricChart& chart, const Vec<T>& x) {
  const std::size_t n = chart.dim();
  std::vector<Vec<T>> dg(n);
  for (std::size_t l = 0; l < n; ++l) {
    Vec<T> dir(n, T(0.0));
    dir[l] = T(1.0);
    dg[l] = tangents(chart.metric(seed(x, dir)));
  }
  Vec<T> ginv = la::inverse(chart.metric(x), n);
  Vec<T> gamma(n * n * n, T(0.0));
  // lowered Γ_lij = ½(∂_i g_lj + ∂_j g_li − ∂_l g_ij)
  Vec<T> low(n * n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        T v = 0.5 * (dg[i][l * n + j] + dg[j][l * n + i] - dg[l][i * n + j]);
        low[(l * n + i) * n + j] = v;
        low[(l * n + j) * n + i] = v;
      }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        T acc(0.0);
        for (std::size_t l = 0; l < n; ++l) acc += ginv[k * n + l] * low[(l * n + i) * n + j];
        gamma[(k * n + i) * n + j] = acc;
        gamma[(k * n + j) * n + i] = acc;
      }
  return gamma;
}

/// Γ(u, v)^k = Γ^k_ij u^i v^j
template <class T>
Vec<T> contract_christoffel(const Vec<T>& gamma, const Vec<T>& u, const Vec<T>& v) {
  const std::size_t n = u.size();
  Vec<T> out(n, T(0.0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      if (value_of(u[i]) == 0.0 && !is_dual<T>::value) continue;
      T row(0.0);
      for (std::size_t j = 0; j < n; ++j) row += gamma[(k * n + i) * n + j] * v[j];
      out[k] += u[i] * row;
    }
  return out;
}

/// Ordinary directional derivative of a generic field at x along dir.
template <class T, class F>
Vec<T> directional(const F& field, const Vec<T>& x, const Vec<T>& dir) {
  return tangents(field(seed(x, dir)));
}

/// (∇_dir F)(x) for a generic field F (callable on Vec<T> and Vec<Dual<T>>).
template <class T, class F>
Vec<T> covariant(const MetricChart& chart, const F& field, const Vec<T>& x, const Vec<T>& dir) {
  auto fx = field(seed(x, dir));
  Vec<T> value = primals(fx);
  Vec<T> deriv = tangents(fx);
  Vec<T> gamma = christoffel(chart, x);
  return la::add(deriv, contract_christoffel(gamma, dir, value));
}

// --- checked pointwise operations ------------------------------------------

Vec<double> metric_at(const MetricChart& chart, const Point& p);
Christoffel christoffel_at(const MetricChart& chart, const Point& p);
TangentVector covariant_derivative_at(const MetricChart& chart, const VectorField& field, const TangentVector& x);
CurvatureTensor curvature_at(const MetricChart& chart, const Point& p);
double riemann_at(const MetricChart& chart, const Point& p, const Vec<double>& x, const Vec<double>& y,
                  const Vec<double>& z, const Vec<double>& w);
double sectional_at(const MetricChart& chart, const Point& p, const Vec<double>& x, const Vec<double>& y);
/// Sectional curvature from a precomputed tensor and metric.
double sectional(const CurvatureTensor& riem, const Vec<double>& g, const Vec<double>& x, const Vec<double>& y);

/// Ordered Gram-Schmidt in the metric g; inputs with residual norm below
/// kRankTol are dropped, the order of the survivors is kept.
OrthonormalFrame gram_schmidt(const MetricChart& chart, const Point& p, const std::vector<Vec<double>>& spanning);
std::vector<Vec<double>> gram_schmidt(const Vec<double>& g, const std::vector<Vec<double>>& spanning);
/// Gram-Schmidt that picks, at every step, the remaining input with the
/// largest residual norm (ties by lowest index).
std::vector<Vec<double>> pivoted_gram_schmidt(const Vec<double>& g, const std::vector<Vec<double>>& spanning,
                                              std::size_t max_vectors);

double inner(const Vec<double>& g, const Vec<double>& u, const Vec<double>& v);
double norm(const Vec<double>& g, const Vec<double>& u);

// --- built-in charts ---------------------------------------------------------

/// Flat R^n scaled by `scale²`, domain |x_i| < half_width.
MetricChart make_euclidean(std::size_t n, double scale = 1.0, double half_width = 1e3);
/// Round 2-sphere of the given radius in polar coordinates (θ, φ).
MetricChart make_sphere2(double radius = 1.0);
/// Unit 3-sphere in Hopf coordinates (η, ξ₁, ξ₂): dη² + cos²η dξ₁² + sin²η dξ₂².
MetricChart make_sphere3();
/// Affine chart of quaternionic projective space HP² on R⁸ = H².
MetricChart make_hp2_chart();

/// Names: euclidean3, euclidean4, euclidean6, euclidean8, sphere2, sphere3, hp2_chart.
MetricChart builtin_chart(std::string_view name);
std::vector<std::string> builtin_chart_names();

}  // namespace oneill
