#pragma once

// Scalar per-element bodies shared by every variant for the loop edges, so
// all variants perform the same operations in the same order.

#include <cstddef>
#include <span>

namespace pspin::kernels::detail {

inline double banded_row(std::span<const double> d, std::span<const double> b1,
                         std::span<const double> b2, std::span<const double> x,
                         std::size_t i) {
  const std::size_t n = d.size();
  double acc = d[i] * x[i];
  if (i + 1 < n) acc = acc + b1[i] * x[i + 1];
  if (i >= 1) acc = acc + b1[i - 1] * x[i - 1];
  if (i + 2 < n) acc = acc + b2[i] * x[i + 2];
  if (i >= 2) acc = acc + b2[i - 2] * x[i - 2];
  return acc;
}

inline double int_power(double base, int p) {
  double result = 1.0;
  for (unsigned e = static_cast<unsigned>(p); e != 0; e >>= 1) {
    if (e & 1u) result = result * base;
    base = base * base;
  }
  return result;
}

inline double potential_point(double c, double sn, int p, double s, double lam) {
  const double cp = int_power(c, p);
  const double inner = (0.0 - lam) * cp + (1.0 - lam) * (sn * sn);
  return s * inner - (1.0 - s) * sn;
}

}  // namespace pspin::kernels::detail
