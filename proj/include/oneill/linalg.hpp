#pragma once

// Dense row-major kernels generic over the scalar type, so metric inverses
// and projectors can be differentiated through. Eigen handles the
// double-only work (eigenvalues, least squares) elsewhere.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>

#include "oneill/error.hpp"
#include "oneill/field.hpp"

namespace oneill::la {

template <class T>
Vec<T> identity(std::size_t n) {
  Vec<T> out(n * n, T(0.0));
  for (std::size_t i = 0; i < n; ++i) out[i * n + i] = T(1.0);
  return out;
}

/// (rows x inner) * (inner x cols)
template <class T>
Vec<T> matmul(const Vec<T>& a, const Vec<T>& b, std::size_t rows, std::size_t inner,
              std::size_t cols) {
  Vec<T> out(rows * cols, T(0.0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      const T& aik = a[i * inner + k];
      for (std::size_t j = 0; j < cols; ++j) out[i * cols + j] += aik * b[k * cols + j];
    }
  return out;
}

template <class T>
Vec<T> matvec(const Vec<T>& a, const Vec<T>& x, std::size_t rows, std::size_t cols) {
  Vec<T> out(rows, T(0.0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[i] += a[i * cols + j] * x[j];
  return out;
}

template <class T>
Vec<T> transpose(const Vec<T>& a, std::size_t rows, std::size_t cols) {
  Vec<T> out(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out[j * rows + i] = a[i * cols + j];
  return out;
}

/// Gauss-Jordan with partial pivoting on the real part.
template <class T>
Vec<T> inverse(Vec<T> a, std::size_t n) {
  Vec<T> inv = identity<T>(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    double best = std::abs(value_of(a[col * n + col]));
    for (std::size_t r = col + 1; r < n; ++r) {
      double cand = std::abs(value_of(a[r * n + col]));
      if (cand > best) {
        best = cand;
        pivot = r;
      }
    }
    if (!(best > 1e-300))
      throw GeometryError(ErrorCode::DegenerateMetric, "singular matrix in inverse");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a[col * n + j], a[pivot * n + j]);
        std::swap(inv[col * n + j], inv[pivot * n + j]);
      }
    T p = a[col * n + col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col * n + j] = a[col * n + j] / p;
      inv[col * n + j] = inv[col * n + j] / p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = a[r * n + col];
      if (value_of(f) == 0.0 && !is_dual<T>::value) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a[r * n + j] = a[r * n + j] - f * a[col * n + j];
        inv[r * n + j] = inv[r * n + j] - f * inv[col * n + j];
      }
    }
  }
  return inv;
}

/// u^T g v
template <class T>
T inner(const Vec<T>& g, const Vec<T>& u, const Vec<T>& v) {
  const std::size_t n = u.size();
  T acc(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    T row(0.0);
    for (std::size_t j = 0; j < n; ++j) row += g[i * n + j] * v[j];
    acc += u[i] * row;
  }
  return acc;
}

template <class T>
Vec<T> axpy(const Vec<T>& x, const T& a, const Vec<T>& y) {
  Vec<T> out(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += a * y[i];
  return out;
}

template <class T>
Vec<T> add(const Vec<T>& x, const Vec<T>& y) {
  Vec<T> out(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] += y[i];
  return out;
}

template <class T>
Vec<T> sub(const Vec<T>& x, const Vec<T>& y) {
  Vec<T> out(x);
  for (std::size_t i = 0; i < x.size(); ++i) out[i] -= y[i];
  return out;
}

template <class T>
Vec<T> scale(const Vec<T>& x, const T& a) {
  Vec<T> out(x);
  for (auto& v : out) v = v * a;
  return out;
}

inline double max_abs(const Vec<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace oneill::la
