#include "flatknot/geometry.hpp"

#include <algorithm>
#include <limits>

namespace flatknot {

double wrap_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double signed_area(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  // Shoelace relative to the first vertex keeps cancellation small for
  // polygons far from the origin.
  const Vec2 o = polygon[0];
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) acc += cross(polygon[i] - o, polygon[i + 1] - o);
  return 0.5 * acc;
}

double closed_length(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  double len = 0.0;
  for (std::size_t i = 0; i < n; ++i) len += distance(polygon[i], polygon[(i + 1) % n]);
  return len;
}

Vec2 centroid(std::span<const Vec2> points) {
  Vec2 c;
  for (const Vec2& p : points) c += p;
  return points.empty() ? c : c / static_cast<double>(points.size());
}

bool intersect_segments(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, SegmentHit& hit) {
  const Vec2 da = a1 - a0;
  const Vec2 db = b1 - b0;
  const double denom = cross(da, db);
  if (denom == 0.0) return false;
  const Vec2 w = b0 - a0;
  const double ta = cross(w, db) / denom;
  const double tb = cross(w, da) / denom;
  const double lo = -kVertexSnap, hi = 1.0 - kVertexSnap;
  if (ta < lo || ta >= hi || tb < lo || tb >= hi) return false;
  hit.ta = std::max(ta, 0.0);
  hit.tb = std::max(tb, 0.0);
  hit.point = a0 + da * ta;
  return true;
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 d = b - a;
  const double len2 = dot(d, d);
  double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + d * t);
}

namespace {

double directed_hausdorff(std::span<const Vec2> from, std::span<const Vec2> to) {
  double worst = 0.0;
  const std::size_t m = to.size();
  for (const Vec2& p : from) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < m; ++j) {
      best = std::min(best, point_segment_distance(p, to[j], to[(j + 1) % m]));
      if (best <= worst) break;
    }
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<Vec2> rotated_about_origin(std::span<const Vec2> pts, double angle) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const Vec2& p : pts) out.push_back(rotate(p, angle));
  return out;
}

}  // namespace

double hausdorff_closed(std::span<const Vec2> a, std::span<const Vec2> b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_after_rigid_alignment(std::span<const Vec2> fixed, std::span<const Vec2> moving) {
  const Vec2 cf = centroid(fixed);
  const Vec2 cm = centroid(moving);
  std::vector<Vec2> f, m;
  f.reserve(fixed.size());
  m.reserve(moving.size());
  for (const Vec2& p : fixed) f.push_back(p - cf);
  for (const Vec2& p : moving) m.push_back(p - cm);

  auto score = [&](double angle) { return hausdorff_closed(f, rotated_about_origin(m, angle)); };

  constexpr int kGrid = 180;
  double best_angle = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGrid; ++k) {
    const double angle = kTwoPi * k / kGrid;
    const double s = score(angle);
    if (s < best) {
      best = s;
      best_angle = angle;
    }
  }
  // Golden-section refinement inside the winning grid cell.
  double lo = best_angle - kTwoPi / kGrid;
  double hi = best_angle + kTwoPi / kGrid;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double s1 = score(x1), s2 = score(x2);
  for (int it = 0; it < 40; ++it) {
    if (s1 < s2) {
      hi = x2;
      x2 = x1;
      s2 = s1;
      x1 = hi - g * (hi - lo);
      s1 = score(x1);
    } else {
      lo = x1;
      x1 = x2;
      s1 = s2;
      x2 = lo + g * (hi - lo);
      s2 = score(x2);
    }
  }
  return std::min({best, s1, s2});
}

}  // namespace flatknot
