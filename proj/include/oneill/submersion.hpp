#pragma once

// Riemannian submersions π: (M, g) → (B, g_B) given in coordinates, their
// vertical/horizontal splitting and the configuration tensors
//   T_E F = H∇_{VE} VF + V∇_{VE} HF,   A_E F = H∇_{HE} VF + V∇_{HE} HF,
// together with the fiber invariants built from them.

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "oneill/chart.hpp"
#include "oneill/quaternionic.hpp"
#include "oneill/sampling.hpp"

namespace oneill {

inline constexpr double kFlagTol = 1e-7;
inline constexpr double kFieldStep = 1e-4;
inline constexpr double kIsometryTol = 1e-6;

struct DeclaredFlags {
  bool anti_invariant = false;
  bool totally_geodesic_fibers = false;
  bool umbilical_fibers = false;
  bool horizontal_integrable = false;
};

struct SubmersionScenario {
  std::string name;
  MetricChart total;
  std::optional<QuaternionicTriple> triple;
  MetricChart base;
  SmoothField map;  // total coordinates -> base coordinates
  Box box;
  DomainPredicate admissible;  // extra sampling rule on top of the chart domain
  DeclaredFlags declared;
  std::optional<double> space_form_c;

  std::size_t total_dim() const { return total.dim(); }
  std::size_t base_dim() const { return base.dim(); }
  std::size_t fiber_dim() const { return total.dim() - base.dim(); }
  bool accepts(const Vec<double>& x) const { return total.contains(x) && (!admissible || admissible(x)); }
};

// --- generic kernels, usable on every dual level below D3 -------------------

/// Jacobian ∂π^i/∂x^k, row-major (base_dim × total_dim).
template <class T>
Vec<T> jacobian(const SubmersionScenario& s, const Vec<T>& x) {
  const std::size_t n = s.total_dim(), m = s.base_dim();
  Vec<T> jac(m * n);
  for (std::size_t k = 0; k < n; ++k) {
    Vec<T> dir(n, T(0.0));
    dir[k] = T(1.0);
    Vec<T> d = tangents(s.map(seed(x, dir)));
    for (std::size_t i = 0; i < m; ++i) jac[i * n + k] = d[i];
  }
  return jac;
}

/// L = g⁻¹ Dπᵀ (Dπ g⁻¹ Dπᵀ)⁻¹: lifts base components to horizontal vectors.
template <class T>
Vec<T> horizontal_lift_matrix(const SubmersionScenario& s, const Vec<T>& x) {
  const std::size_t n = s.total_dim(), m = s.base_dim();
  const Vec<T> jac = jacobian(s, x);
  const Vec<T> ginv = la::inverse(s.total.metric(x), n);
  const Vec<T> gjt = la::matmul(ginv, la::transpose(jac, m, n), n, n, m);
  const Vec<T> gram = la::matmul(jac, gjt, m, n, m);
  return la::matmul(gjt, la::inverse(gram, m), n, m, m);
}

/// g-orthogonal projector onto the horizontal space, P_H = L Dπ.
template <class T>
Vec<T> horizontal_projector(const SubmersionScenario& s, const Vec<T>& x) {
  const std::size_t n = s.total_dim(), m = s.base_dim();
  return la::matmul(horizontal_lift_matrix(s, x), jacobian(s, x), n, m, n);
}

template <class T>
Vec<T> vertical_projector(const SubmersionScenario& s, const Vec<T>& x) {
  return la::sub(la::identity<T>(s.total_dim()), horizontal_projector(s, x));
}

// --- pointwise splitting ------------------------------------------------------

struct SplitFrames {
  OrthonormalFrame vertical;    // U_1..U_r
  OrthonormalFrame horizontal;  // X_1..X_ℓ
  Vec<double> projector_V;
  Vec<double> projector_H;
  double isometry_defect = 0.0;  // max |g_B(dπX_i, dπX_j) − δ_ij|
};

/// Metric, connection and projector data at one point, including the first
/// derivatives of the vertical projector along every coordinate direction.
struct LocalSplit {
  Vec<double> x;
  std::size_t n = 0;
  std::size_t m = 0;
  Vec<double> g;
  Vec<double> gamma;
  Vec<double> PV;
  Vec<double> PH;
  std::vector<Vec<double>> dPV;  // ∂_k P_V
  Vec<double> jac;
};

LocalSplit local_split(const SubmersionScenario& s, const Vec<double>& x);

SplitFrames split_at(const SubmersionScenario& s, const Point& p);

struct AntiInvariantCheck {
  bool pass = false;
  double defect = 0.0;  // max |g(J_α U_i, U_j)|
};
AntiInvariantCheck check_anti_invariant(const SubmersionScenario& s, const Point& p, const SplitFrames& frames);

/// T and A with constant-component extensions of F, from cached split data.
Vec<double> oneill_T(const LocalSplit& ls, const Vec<double>& E, const Vec<double>& F);
Vec<double> oneill_A(const LocalSplit& ls, const Vec<double>& E, const Vec<double>& F);

TangentVector oneill_T_at(const SubmersionScenario& s, const Point& p, const TangentVector& E, const TangentVector& F);
TangentVector oneill_A_at(const SubmersionScenario& s, const Point& p, const TangentVector& E, const TangentVector& F);
/// Same tensors with F extended by an arbitrary smooth field; everything is
/// differentiated by autodiff through the projector fields.
TangentVector oneill_T_field(const SubmersionScenario& s, const Point& p, const TangentVector& E,
                             const VectorField& F);
TangentVector oneill_A_field(const SubmersionScenario& s, const Point& p, const TangentVector& E,
                             const VectorField& F);

/// N = Σ_j T_{U_j} U_j at x, for any orthonormal vertical frame.
Vec<double> mean_curvature_sum(const SubmersionScenario& s, const Vec<double>& x);
/// Σ_i g(∇_{X_i} N, X_i), N differentiated by central differences of step h.
double horizontal_divergence_N(const SubmersionScenario& s, const Point& p, const SplitFrames& frames,
                               double h = kFieldStep);

struct OneillNorms {
  double T_V = 0.0;  // ‖T^V‖² = Σ_{i,k} |T_{U_k} X_i|²
  double T_H = 0.0;  // ‖T^H‖² = Σ_{j,k} |T_{U_j} U_k|²
  double A_V = 0.0;  // ‖A^V‖² = Σ_{i,j} |A_{X_i} X_j|²
  double A_H = 0.0;  // ‖A^H‖² = Σ_{i,k} |A_{X_i} U_k|²
};

struct OneillSample {
  Point point;
  SplitFrames frames;
  std::size_t r = 0;
  std::size_t l = 0;
  Vec<double> T;  // T_ij^s = g(T_{U_i}U_j, X_s) at [(i*r + j)*l + s]
  Vec<double> A;  // A_ij^β = g(A_{X_i}X_j, U_β) at [(i*l + j)*r + β]
  Vec<double> N;
  Vec<double> H;
  double H_norm2 = 0.0;
  double deltaN = 0.0;
  bool has_triple = false;
  std::array<Vec<double>, 3> B;  // g(J_α X_i, U_k) at [i*r + k]
  std::array<Vec<double>, 3> C;  // g(J_α X_i, X_j) at [i*l + j]
  OneillNorms norms;

  double t(std::size_t i, std::size_t j, std::size_t s) const { return T[(i * r + j) * l + s]; }
  double a(std::size_t i, std::size_t j, std::size_t b) const { return A[(i * l + j) * r + b]; }
  double b(std::size_t alpha, std::size_t i, std::size_t k) const { return B[alpha][i * r + k]; }
  double c(std::size_t alpha, std::size_t i, std::size_t j) const { return C[alpha][i * l + j]; }
  /// g(H, X_s)
  double h(std::size_t s) const;
};

OneillSample assemble_sample(const SubmersionScenario& s, const Point& p);

struct FiberFlags {
  bool totally_geodesic = false;
  bool umbilical = false;
  bool horizontal_integrable = false;
};
FiberFlags classify_fibers(const OneillSample& sample, double tol = kFlagTol);

// --- catalog -----------------------------------------------------------------

/// R⁴ → R³ dropping x₁; standard triple, c = 0.
SubmersionScenario make_flat_linear_r1();
/// R⁸ → R⁶ dropping x₁ and x₅; blockwise standard triple, c = 0.
SubmersionScenario make_flat_linear_r2();
/// R⁴ → R³, (x₁,x₂,x₃,x₄) ↦ (√(x₁²+x₂²), x₃, x₄); both metrics scaled by λ².
SubmersionScenario make_polar_circles(double lambda = 1.0);
/// S³ → S²(½) in Hopf coordinates, no quaternionic structure.
SubmersionScenario make_hopf();

SubmersionScenario builtin_scenario(std::string_view name);
std::vector<std::string> builtin_scenario_names();

/// Uniform draws from the sampling box, rejecting points the scenario does
/// not accept. Throws PreconditionFailed after too many rejections.
std::vector<Point> sample_points(const SubmersionScenario& s, std::size_t count, std::uint64_t seed);

}  // namespace oneill
