#pragma once

#include <array>

namespace e2ecd {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// 2x3 matrix [a b c; d e f] acting on (x, y, 1). In synthesis it maps
// output (resampled) coordinates to input coordinates.
struct AffineTransform2D {
  std::array<double, 6> m{1.0, 0.0, 0.0, 0.0, 1.0, 0.0};

  static AffineTransform2D identity() { return {}; }
  static AffineTransform2D translation(double tx, double ty) {
    return {{1.0, 0.0, tx, 0.0, 1.0, ty}};
  }

  double determinant() const noexcept { return m[0] * m[4] - m[1] * m[3]; }

  friend bool operator==(const AffineTransform2D&, const AffineTransform2D&) = default;
};

inline constexpr double kMinAffineDeterminant = 1e-8;

Point2 affine_apply(const AffineTransform2D& t, Point2 p) noexcept;
inline Point2 affine_apply(const AffineTransform2D& t, double x, double y) noexcept {
  return affine_apply(t, Point2{x, y});
}

// Throws DegenerateTransform when |det| <= kMinAffineDeterminant.
AffineTransform2D affine_invert(const AffineTransform2D& t);

// compose(a, b)(p) == a(b(p)).
AffineTransform2D affine_compose(const AffineTransform2D& a, const AffineTransform2D& b) noexcept;

}  // namespace e2ecd
