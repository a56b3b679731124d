#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

namespace lvs::detail {

// 4-point Lagrange interpolation on a uniform grid starting at x0 with
// spacing h; clamped to the end values outside.
inline double lagrange4(const std::vector<double>& f, double x0, double h, double x) {
  const std::size_t n = f.size();
  const double s = (x - x0) / h;
  if (s <= 0.0) return f.front();
  if (s >= static_cast<double>(n - 1)) return f.back();
  auto i = static_cast<std::size_t>(s);
  i = std::clamp<std::size_t>(i, 1, n - 3);
  const double t = s - static_cast<double>(i);
  return f[i - 1] * (-t * (t - 1.0) * (t - 2.0) / 6.0) + f[i] * ((t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0) +
         f[i + 1] * (-(t + 1.0) * t * (t - 2.0) / 2.0) + f[i + 2] * ((t + 1.0) * t * (t - 1.0) / 6.0);
}

inline double linear(const std::vector<double>& f, double x0, double h, double x) {
  const std::size_t n = f.size();
  const double s = (x - x0) / h;
  if (s <= 0.0) return f.front();
  if (s >= static_cast<double>(n - 1)) return f.back();
  const auto i = std::min(static_cast<std::size_t>(s), n - 2);
  const double t = s - static_cast<double>(i);
  return (1.0 - t) * f[i] + t * f[i + 1];
}

}  // namespace lvs::detail
