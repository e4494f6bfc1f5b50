#pragma once

// Quaternionic Hermitian triples J₁, J₂, J₃ on a chart, the quaternionic
// Kähler condition ∇_X J_α = ω_{α+2}(X) J_{α+1} − ω_{α+1}(X) J_{α+2}
// (indices mod 3), and the curvature tensor of a quaternionic space form M(c).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oneill/chart.hpp"

namespace oneill {

/// Coordinate components of J₁, J₂, J₃; (J_α X)^a = J^a_b X^b.
using TripleAt = std::array<Vec<double>, 3>;

class QuaternionicTriple {
 public:
  QuaternionicTriple() = default;
  /// `fields` returns the three n×n matrices concatenated row-major.
  QuaternionicTriple(std::string name, MetricChart chart, SmoothField fields);

  const std::string& name() const { return name_; }
  const MetricChart& chart() const { return chart_; }
  std::size_t dim() const { return chart_.dim(); }

  template <class T>
  Vec<T> raw(const Vec<T>& x) const {
    return fields_(x);
  }
  TripleAt at(const Vec<double>& x) const;

 private:
  std::string name_;
  MetricChart chart_;
  SmoothField fields_;
};

struct SpaceFormModel {
  double c = 0.0;
};

struct StructureCheck {
  bool pass = false;
  double max_defect = 0.0;
  double algebra_defect = 0.0;
  double hermitian_defect = 0.0;
};

struct KahlerFitReport {
  std::array<Vec<double>, 3> omega;  // ω_α(∂_k)
  double residual = 0.0;
};

struct CurvatureEstimate {
  double mean = 0.0;
  double spread = 0.0;  // max − min
  double min = 0.0;
  double max = 0.0;
  std::size_t samples = 0;
};

inline constexpr double kStructureTol = 1e-9;

StructureCheck check_structure_axioms(const QuaternionicTriple& triple, const Point& p);
KahlerFitReport check_parallelism(const QuaternionicTriple& triple, const Point& p);

/// g(R(X,Y)Z, W) for the space-form tensor with constant c; g and J at one point.
double model_curvature(const SpaceFormModel& model, const Vec<double>& g, const TripleAt& J, const Vec<double>& x,
                       const Vec<double>& y, const Vec<double>& z, const Vec<double>& w);

/// Sectional curvatures of the quaternionic planes span{X, J_α X} for
/// `planes_per_point` random unit X at every point.
CurvatureEstimate estimate_c(const QuaternionicTriple& triple, const std::vector<Point>& points,
                             std::size_t planes_per_point = 10, std::uint64_t seed = 42);

/// Names: standard_h1 (euclidean4), standard_h2 (euclidean8, blockwise),
/// hp2 (hp2_chart), corrupted_h1 (euclidean4 with J₂ := J₁, fails the axioms).
QuaternionicTriple builtin_triple(std::string_view name);
std::vector<std::string> builtin_triple_names();

/// Left multiplication by i, j, k on every H block of R^{4m}.
QuaternionicTriple make_standard_triple(const MetricChart& chart);

}  // namespace oneill
