#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace flatknot {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }
  Vec2& operator-=(Vec2 o) {
    x -= o.x;
    y -= o.y;
    return *this;
  }
  friend constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline Vec2 rotate(Vec2 v, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Reduces an angle into (-pi, pi].
double wrap_angle(double a);

// Signed shoelace area of a closed polygon (counterclockwise positive).
double signed_area(std::span<const Vec2> polygon);

// Length of the closed polygon through all points.
double closed_length(std::span<const Vec2> polygon);

Vec2 centroid(std::span<const Vec2> points);

struct SegmentHit {
  double ta = 0.0;  // parameter on the first segment
  double tb = 0.0;  // parameter on the second segment
  Vec2 point;
};

// Proper intersection of [a0,a1] and [b0,b1] with both parameters in the
// half-open range [-kVertexSnap, 1 - kVertexSnap), so a hit on a shared
// polygon vertex is reported by exactly one of its two segments despite
// rounding. Parameters are clamped to [0, 1). Parallel segments never hit.
inline constexpr double kVertexSnap = 1e-12;
bool intersect_segments(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, SegmentHit& hit);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

// Symmetric Hausdorff distance between two closed polylines (vertex-to-polyline).
double hausdorff_closed(std::span<const Vec2> a, std::span<const Vec2> b);

// Minimum Hausdorff distance over rigid motions of `moving`: centroids are
// matched and the rotation angle is searched on a grid and then refined.
double hausdorff_after_rigid_alignment(std::span<const Vec2> fixed, std::span<const Vec2> moving);

}  // namespace flatknot
