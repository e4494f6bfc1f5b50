#pragma once

// Deterministic sampling. Doubles are built from raw mt19937_64 bits rather
// than std::uniform_real_distribution so reports are reproducible across
// standard library implementations.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "oneill/field.hpp"

namespace oneill {

using Box = std::vector<std::pair<double, double>>;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  double normal() {
    // Box-Muller, first branch only
    double u1 = unit();
    while (u1 <= 0.0) u1 = unit();
    const double u2 = unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  Vec<double> normal_vector(std::size_t n) {
    Vec<double> v(n);
    for (auto& x : v) x = normal();
    return v;
  }
  Vec<double> in_box(const Box& box) {
    Vec<double> v;
    v.reserve(box.size());
    for (auto [lo, hi] : box) v.push_back(uniform(lo, hi));
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace oneill
