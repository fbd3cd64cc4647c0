// Small geometric primitives shared by the mesh builders and validators.
#ifndef FVINEQ_GEOMETRY_HPP
#define FVINEQ_GEOMETRY_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace fvineq {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;

/// z-component of the 2-D cross product.
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Counter-clockwise rotation by pi/2.
inline Vec2 rot90(const Vec2& v) { return Vec2(-v.y(), v.x()); }

/// Signed area of a polygon given by its vertex loop (positive if CCW).
inline double polygon_signed_area(std::span<const Vec2> loop) {
  double a = 0.0;
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    a += cross2(p, q);
  }
  return 0.5 * a;
}

/// Area centroid of a simple polygon.
inline Vec2 polygon_centroid(std::span<const Vec2> loop) {
  double a = 0.0;
  Vec2 c = Vec2::Zero();
  const std::size_t n = loop.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = loop[i];
    const Vec2& q = loop[(i + 1) % n];
    const double w = cross2(p, q);
    a += w;
    c += w * (p + q);
  }
  return c / (3.0 * a);
}

/// Circumcenter of a non-degenerate triangle.
inline Vec2 circumcenter(const Vec2& a, const Vec2& b, const Vec2& c) {
  const Vec2 ab = b - a, ac = c - a;
  const double d = 2.0 * cross2(ab, ac);
  const double ab2 = ab.squaredNorm(), ac2 = ac.squaredNorm();
  return a + Vec2(ac.y() * ab2 - ab.y() * ac2, ab.x() * ac2 - ac.x() * ab2) / d;
}

/// True if every angle of triangle (a,b,c) is strictly below pi/2 - margin.
inline bool triangle_is_acute(const Vec2& a, const Vec2& b, const Vec2& c, double margin = 0.0) {
  const Vec2 pts[3] = {a, b, c};
  for (int i = 0; i < 3; ++i) {
    const Vec2 u = pts[(i + 1) % 3] - pts[i];
    const Vec2 v = pts[(i + 2) % 3] - pts[i];
    // angle < pi/2 - margin  <=>  cos(angle) > sin(margin) ~ margin for small margin
    if (u.dot(v) <= margin * u.norm() * v.norm()) return false;
  }
  return true;
}

/// Largest pairwise distance in a point set.
inline double diameter(std::span<const Vec3> pts) {
  double d2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      d2 = std::max(d2, (pts[i] - pts[j]).squaredNorm());
  return std::sqrt(d2);
}

}  // namespace fvineq

#endif
