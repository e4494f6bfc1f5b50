#pragma once

#include <array>

#include "oneill/field.hpp"

namespace oneill {

/// w + x i + y j + z k
template <class T>
struct Quat {
  T w, x, y, z;
};

template <class T>
Quat<T> qmul(const Quat<T>& a, const Quat<T>& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

template <class T>
Quat<T> qconj(const Quat<T>& a) {
  return {a.w, -a.x, -a.y, -a.z};
}

template <class T>
Quat<T> quat_at(const Vec<T>& x, std::size_t block) {
  return {x[4 * block], x[4 * block + 1], x[4 * block + 2], x[4 * block + 3]};
}

/// Real 4x4 matrix (row-major) of q ↦ u q (left) or q ↦ q u (right).
inline Vec<double> quat_mult_matrix(const Quat<double>& u, bool left) {
  Vec<double> m(16);
  for (std::size_t col = 0; col < 4; ++col) {
    Quat<double> e{col == 0 ? 1.0 : 0.0, col == 1 ? 1.0 : 0.0, col == 2 ? 1.0 : 0.0, col == 3 ? 1.0 : 0.0};
    Quat<double> r = left ? qmul(u, e) : qmul(e, u);
    m[0 * 4 + col] = r.w;
    m[1 * 4 + col] = r.x;
    m[2 * 4 + col] = r.y;
    m[3 * 4 + col] = r.z;
  }
  return m;
}

}  // namespace oneill
