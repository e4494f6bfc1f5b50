#pragma once

// Type-erased smooth maps R^n -> R^m that can be evaluated on every scalar
// level the geometry kernels need (plain doubles and up to three nested dual
// layers). Built from a generic lambda `[](const auto& x) { ... }` taking a
// std::vector of scalars and returning a std::vector of the same scalar.

#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "oneill/dual.hpp"

namespace oneill {

template <class T>
using Vec = std::vector<T>;

class SmoothField {
 public:
  SmoothField() = default;

  template <class F>
  explicit SmoothField(F f)
      : fns_(std::function<Vec<double>(const Vec<double>&)>(f),
             std::function<Vec<D1>(const Vec<D1>&)>(f),
             std::function<Vec<D2>(const Vec<D2>&)>(f),
             std::function<Vec<D3>(const Vec<D3>&)>(f)) {}

  template <class T>
  Vec<T> operator()(const Vec<T>& x) const {
    return std::get<std::function<Vec<T>(const Vec<T>&)>>(fns_)(x);
  }

  explicit operator bool() const { return static_cast<bool>(std::get<0>(fns_)); }

 private:
  std::tuple<std::function<Vec<double>(const Vec<double>&)>,
             std::function<Vec<D1>(const Vec<D1>&)>,
             std::function<Vec<D2>(const Vec<D2>&)>,
             std::function<Vec<D3>(const Vec<D3>&)>>
      fns_;
};

/// Point x + eps * dir with the tangent seeded one level up.
template <class T>
Vec<Dual<T>> seed(const Vec<T>& x, const Vec<T>& dir) {
  Vec<Dual<T>> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = Dual<T>(x[i], dir[i]);
  return out;
}

template <class T>
Vec<T> primals(const Vec<Dual<T>>& x) {
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].v;
  return out;
}

template <class T>
Vec<T> tangents(const Vec<Dual<T>>& x) {
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i].d;
  return out;
}

/// Converts a vector of doubles to scalar type T (constant, zero tangents).
template <class T>
Vec<T> lift(const Vec<double>& x) {
  Vec<T> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = T(x[i]);
  return out;
}

template <class T>
Vec<double> values(const Vec<T>& x) {
  Vec<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = value_of(x[i]);
  return out;
}

}  // namespace oneill
