#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace prodigy {

using Vec = std::vector<double>;

inline double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// <g, u - v>
inline double dot_diff(std::span<const double> g, std::span<const double> u,
                       std::span<const double> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] * (u[i] - v[i]);
  return s;
}

inline double norm_l2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

inline double norm_l1(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline double norm_linf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double distance_l2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double distance_linf(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace prodigy
