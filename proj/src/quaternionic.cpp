#include "oneill/quaternionic.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "oneill/quaternion_algebra.hpp"
#include "oneill/sampling.hpp"

namespace oneill {

namespace {

void require_quaternionic_dim(const QuaternionicTriple& triple) {
  if (triple.dim() == 0 || triple.dim() % 4 != 0)
    throw GeometryError(ErrorCode::PreconditionFailed,
                        "chart '" + triple.chart().name() + "' has dimension " + std::to_string(triple.dim()) +
                            ", not a multiple of 4");
}

void require_point(const QuaternionicTriple& triple, const Point& p) {
  if (!triple.chart().contains(p.coords))
    throw GeometryError(ErrorCode::OutOfDomain, "point outside the domain of chart '" + triple.chart().name() + "'");
}

double frob_diff(const Vec<double>& a, const Vec<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Block-diagonal R^{4m} operator from one 4x4 block.
template <class T>
Vec<T> block_diagonal(const Vec<double>& block, std::size_t m) {
  const std::size_t n = 4 * m;
  Vec<T> out(n * n, T(0.0));
  for (std::size_t b = 0; b < m; ++b)
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) out[(4 * b + i) * n + 4 * b + j] = T(block[i * 4 + j]);
  return out;
}

/// Constant triple built from quaternion multiplication on every block.
QuaternionicTriple constant_triple(std::string name, const MetricChart& chart, std::array<Quat<double>, 3> units,
                                   bool left) {
  const std::size_t m = chart.dim() / 4;
  std::array<Vec<double>, 3> blocks;
  for (int a = 0; a < 3; ++a) blocks[a] = quat_mult_matrix(units[a], left);
  auto fields = [blocks, m](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Vec<T> out;
    out.reserve(3 * 16 * m * m);
    for (const auto& b : blocks) {
      Vec<T> mat = block_diagonal<T>(b, m);
      out.insert(out.end(), mat.begin(), mat.end());
    }
    return out;
  };
  return QuaternionicTriple(std::move(name), chart, SmoothField(fields));
}

}  // namespace

QuaternionicTriple::QuaternionicTriple(std::string name, MetricChart chart, SmoothField fields)
    : name_(std::move(name)), chart_(std::move(chart)), fields_(std::move(fields)) {}

TripleAt QuaternionicTriple::at(const Vec<double>& x) const {
  const std::size_t n = dim();
  Vec<double> all = raw(x);
  if (all.size() != 3 * n * n)
    throw GeometryError(ErrorCode::ShapeMismatch, "triple '" + name_ + "' must return 3 n x n matrices");
  TripleAt out;
  for (std::size_t a = 0; a < 3; ++a) out[a].assign(all.begin() + a * n * n, all.begin() + (a + 1) * n * n);
  return out;
}

StructureCheck check_structure_axioms(const QuaternionicTriple& triple, const Point& p) {
  require_quaternionic_dim(triple);
  require_point(triple, p);
  const std::size_t n = triple.dim();
  const TripleAt J = triple.at(p.coords);
  const Vec<double> g = triple.chart().metric(p.coords);
  const Vec<double> minus_id = la::scale(la::identity<double>(n), -1.0);

  StructureCheck out;
  for (std::size_t a = 0; a < 3; ++a) {
    const std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
    out.algebra_defect = std::max(out.algebra_defect, frob_diff(la::matmul(J[a], J[a], n, n, n), minus_id));
    out.algebra_defect = std::max(out.algebra_defect, frob_diff(la::matmul(J[a], J[b], n, n, n), J[c]));
    out.algebra_defect =
        std::max(out.algebra_defect, frob_diff(la::matmul(J[b], J[a], n, n, n), la::scale(J[c], -1.0)));
    // JᵀgJ = g
    Vec<double> pulled = la::matmul(la::transpose(J[a], n, n), la::matmul(g, J[a], n, n, n), n, n, n);
    out.hermitian_defect = std::max(out.hermitian_defect, frob_diff(pulled, g));
  }
  out.max_defect = std::max(out.algebra_defect, out.hermitian_defect);
  out.pass = std::isfinite(out.max_defect) && out.max_defect < kStructureTol;
  return out;
}

KahlerFitReport check_parallelism(const QuaternionicTriple& triple, const Point& p) {
  require_quaternionic_dim(triple);
  require_point(triple, p);
  const std::size_t n = triple.dim();
  const std::size_t nn = n * n;
  const Vec<double>& x = p.coords;
  const TripleAt J = triple.at(x);
  const Christoffel gamma = christoffel_at(triple.chart(), p);

  KahlerFitReport out;
  for (auto& w : out.omega) w.assign(n, 0.0);
  double sq = 0.0;

  for (std::size_t k = 0; k < n; ++k) {
    Vec<double> dir(n, 0.0);
    dir[k] = 1.0;
    const Vec<double> dJ = tangents(triple.raw(seed(x, dir)));
    // (∇_k J)^a_b = ∂_k J^a_b + Γ^a_kc J^c_b − J^a_c Γ^c_kb
    std::array<Vec<double>, 3> nablaJ;
    for (std::size_t al = 0; al < 3; ++al) {
      nablaJ[al].assign(nn, 0.0);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
          double v = dJ[al * nn + a * n + b];
          for (std::size_t c = 0; c < n; ++c)
            v += gamma(a, k, c) * J[al][c * n + b] - J[al][a * n + c] * gamma(c, k, b);
          nablaJ[al][a * n + b] = v;
        }
    }
    // ∇J_α = ω_{α+2} J_{α+1} − ω_{α+1} J_{α+2}; unknowns (ω₁, ω₂, ω₃)
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3 * nn, 3);
    Eigen::VectorXd rhs(3 * nn);
    for (std::size_t al = 0; al < 3; ++al) {
      const std::size_t b = (al + 1) % 3, c = (al + 2) % 3;
      for (std::size_t e = 0; e < nn; ++e) {
        A(al * nn + e, c) += J[b][e];
        A(al * nn + e, b) -= J[c][e];
        rhs(al * nn + e) = nablaJ[al][e];
      }
    }
    Eigen::Vector3d w = A.colPivHouseholderQr().solve(rhs);
    for (std::size_t al = 0; al < 3; ++al) out.omega[al][k] = w(al);
    sq += (A * w - rhs).squaredNorm();
  }
  out.residual = std::sqrt(sq);
  return out;
}

double model_curvature(const SpaceFormModel& model, const Vec<double>& g, const TripleAt& J, const Vec<double>& x,
                       const Vec<double>& y, const Vec<double>& z, const Vec<double>& w) {
  if (model.c == 0.0) return 0.0;
  const std::size_t n = x.size();
  auto G = [&](const Vec<double>& u, const Vec<double>& v) { return la::inner(g, u, v); };
  double acc = G(y, z) * G(x, w) - G(x, z) * G(y, w);
  for (std::size_t a = 0; a < 3; ++a) {
    const Vec<double> jx = la::matvec(J[a], x, n, n);
    const Vec<double> jy = la::matvec(J[a], y, n, n);
    const Vec<double> jz = la::matvec(J[a], z, n, n);
    acc += G(jy, z) * G(jx, w) - G(jx, z) * G(jy, w) + 2.0 * G(jy, x) * G(jz, w);
  }
  return 0.25 * model.c * acc;
}

CurvatureEstimate estimate_c(const QuaternionicTriple& triple, const std::vector<Point>& points,
                             std::size_t planes_per_point, std::uint64_t seed) {
  require_quaternionic_dim(triple);
  if (points.empty()) throw GeometryError(ErrorCode::PreconditionFailed, "estimate_c needs at least one point");
  const std::size_t n = triple.dim();
  Sampler rng(seed);
  CurvatureEstimate out;
  out.min = std::numeric_limits<double>::infinity();
  out.max = -out.min;
  double sum = 0.0;
  for (const Point& p : points) {
    const StructureCheck s = check_structure_axioms(triple, p);
    if (!s.pass)
      throw GeometryError(ErrorCode::PreconditionFailed,
                          "triple '" + triple.name() + "' fails the structure axioms at a sample point");
    const Vec<double> g = metric_at(triple.chart(), p);
    const CurvatureTensor riem = curvature_at(triple.chart(), p);
    const TripleAt J = triple.at(p.coords);
    for (std::size_t s_i = 0; s_i < planes_per_point; ++s_i) {
      Vec<double> X = rng.normal_vector(n);
      X = la::scale(X, 1.0 / norm(g, X));
      for (std::size_t a = 0; a < 3; ++a) {
        const double k = sectional(riem, g, X, la::matvec(J[a], X, n, n));
        sum += k;
        out.min = std::min(out.min, k);
        out.max = std::max(out.max, k);
        ++out.samples;
      }
    }
  }
  out.mean = sum / static_cast<double>(out.samples);
  out.spread = out.max - out.min;
  return out;
}

QuaternionicTriple make_standard_triple(const MetricChart& chart) {
  if (chart.dim() == 0 || chart.dim() % 4 != 0)
    throw GeometryError(ErrorCode::PreconditionFailed, "standard triple needs dimension 4m");
  return constant_triple("standard", chart, {Quat<double>{0, 1, 0, 0}, Quat<double>{0, 0, 1, 0}, Quat<double>{0, 0, 0, 1}},
                         true);
}

QuaternionicTriple builtin_triple(std::string_view name) {
  if (name == "standard_h1") {
    auto t = make_standard_triple(make_euclidean(4));
    return QuaternionicTriple("standard_h1", t.chart(), SmoothField([t](const auto& x) { return t.raw(x); }));
  }
  if (name == "standard_h2") {
    auto t = make_standard_triple(make_euclidean(8));
    return QuaternionicTriple("standard_h2", t.chart(), SmoothField([t](const auto& x) { return t.raw(x); }));
  }
  if (name == "hp2") {
    // Lines are right H-submodules, so the structure acts on dq from the right.
    // J₁ = R_{−i}, J₂ = R_{−j}; then J₁J₂ = R_{(−j)(−i)} = R_{−k} = J₃.
    return constant_triple("hp2", make_hp2_chart(),
                           {Quat<double>{0, -1, 0, 0}, Quat<double>{0, 0, -1, 0}, Quat<double>{0, 0, 0, -1}}, false);
  }
  if (name == "corrupted_h1") {
    auto t = make_standard_triple(make_euclidean(4));
    auto fields = [t](const auto& x) {
      auto v = t.raw(x);
      std::copy(v.begin(), v.begin() + 16, v.begin() + 16);  // J₂ := J₁
      return v;
    };
    return QuaternionicTriple("corrupted_h1", t.chart(), SmoothField(fields));
  }
  throw GeometryError(ErrorCode::UnknownName, "no built-in triple named '" + std::string(name) + "'");
}

std::vector<std::string> builtin_triple_names() { return {"standard_h1", "standard_h2", "hp2", "corrupted_h1"}; }

}  // namespace oneill
