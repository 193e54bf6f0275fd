#pragma once

#include <array>
#include <complex>
#include <numbers>

namespace hope {

using cplx = std::complex<double>;
using Vec3c = std::array<cplx, 3>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = std::numbers::pi;

inline Vec3c cross(const Vec3c& a, const Vec3c& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

// Bilinear (unconjugated) product.
inline cplx dot(const Vec3c& a, const Vec3c& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double norm2(const Vec3c& a) {
  return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

}  // namespace hope
