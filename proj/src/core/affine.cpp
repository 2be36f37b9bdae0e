#include "e2ecd/core/affine.hpp"

#include <cmath>
#include <string>

#include "e2ecd/core/error.hpp"

namespace e2ecd {

Point2 affine_apply(const AffineTransform2D& t, Point2 p) noexcept {
  const auto& m = t.m;
  return {m[0] * p.x + m[1] * p.y + m[2], m[3] * p.x + m[4] * p.y + m[5]};
}

AffineTransform2D affine_invert(const AffineTransform2D& t) {
  const double det = t.determinant();
  if (!(std::abs(det) > kMinAffineDeterminant)) {
    throw DegenerateTransform("affine transform is singular (det=" + std::to_string(det) + ")");
  }
  const auto& m = t.m;
  const double ia = m[4] / det;
  const double ib = -m[1] / det;
  const double id = -m[3] / det;
  const double ie = m[0] / det;
  return {{ia, ib, -(ia * m[2] + ib * m[5]), id, ie, -(id * m[2] + ie * m[5])}};
}

AffineTransform2D affine_compose(const AffineTransform2D& a, const AffineTransform2D& b) noexcept {
  const auto& p = a.m;
  const auto& q = b.m;
  return {{p[0] * q[0] + p[1] * q[3], p[0] * q[1] + p[1] * q[4], p[0] * q[2] + p[1] * q[5] + p[2],
           p[3] * q[0] + p[4] * q[3], p[3] * q[1] + p[4] * q[4], p[3] * q[2] + p[4] * q[5] + p[5]}};
}

}  // namespace e2ecd
