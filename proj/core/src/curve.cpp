#include "flatknot/curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "flatknot/errors.hpp"

namespace flatknot {

ClosedCurve::ClosedCurve(std::vector<Vec2> points) : points_(std::move(points)) {
  if (points_.size() < kMinSamples) {
    throw Error(ErrorCode::kDegenerate, "closed curve needs at least 8 samples");
  }
  length_ = closed_length(points_);
  if (!(length_ > 0.0) || !std::isfinite(length_)) {
    throw Error(ErrorCode::kDegenerate, "degenerate polyline");
  }
}

double ClosedCurve::segment_ratio() const {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    const double d = distance(points_[i], (*this)[i + 1]);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi / lo;
}

ClosedCurve ClosedCurve::reversed() const {
  std::vector<Vec2> pts(points_.rbegin(), points_.rend());
  std::rotate(pts.begin(), pts.end() - 1, pts.end());  // keep sample 0 first
  return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::scaled(double factor, Vec2 about) const {
  std::vector<Vec2> pts;
  pts.reserve(size());
  for (const Vec2& p : points_) pts.push_back(about + (p - about) * factor);
  return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::translated(Vec2 offset) const {
  std::vector<Vec2> pts;
  pts.reserve(size());
  for (const Vec2& p : points_) pts.push_back(p + offset);
  return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::rotated(double angle, Vec2 about) const {
  std::vector<Vec2> pts;
  pts.reserve(size());
  for (const Vec2& p : points_) pts.push_back(about + rotate(p - about, angle));
  return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::shifted(std::size_t shift) const {
  std::vector<Vec2> pts(points_);
  std::rotate(pts.begin(), pts.begin() + static_cast<long>(shift % size()), pts.end());
  return ClosedCurve(std::move(pts));
}

ClosedCurve ClosedCurve::with_length(double target) const {
  return scaled(target / length_, centroid(points_));
}

double GaussRep::alpha_end() const {
  if (end_value) return *end_value;
  const double last = alpha.back();
  return last + wrap_angle(alpha.front() - last);
}

double GaussRep::lift_defect() const { return alpha_end() - alpha.front(); }

double GaussRep::lifted(long i) const {
  const long n = static_cast<long>(alpha.size());
  long q = i / n;
  long r = i % n;
  if (r < 0) {
    r += n;
    --q;
  }
  return alpha[static_cast<std::size_t>(r)] + static_cast<double>(q) * lift_defect();
}

ClosedCurve Reconstruction::curve() const {
  if (!closed) {
    std::ostringstream msg;
    msg << "reconstruction is open, closure gap (" << closure_gap.x << ", " << closure_gap.y << ")";
    throw Error(ErrorCode::kDegenerate, msg.str());
  }
  return ClosedCurve(points);
}

namespace {

// Input polyline with repeated points removed (including a repeated first point at the end).
std::vector<Vec2> clean_polyline(std::span<const Vec2> points) {
  std::vector<Vec2> out;
  out.reserve(points.size());
  for (const Vec2& p : points) {
    if (out.empty() || distance(out.back(), p) > 0.0) out.push_back(p);
  }
  while (out.size() > 1 && distance(out.back(), out.front()) == 0.0) out.pop_back();
  return out;
}

struct ChordWalk {
  std::span<const Vec2> poly;
  std::vector<double> cumulative;  // arclength at the start of each segment
  double total = 0.0;

  explicit ChordWalk(std::span<const Vec2> p) : poly(p) {
    cumulative.resize(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      cumulative[i] = total;
      total += distance(p[i], p[(i + 1) % p.size()]);
    }
  }

  // Takes `count` chord steps of length c from the start; returns the
  // unwrapped arclength position reached and optionally the points visited.
  double walk(double c, std::size_t count, std::vector<Vec2>* out) const {
    const std::size_t m = poly.size();
    std::size_t seg = 0;
    std::size_t laps = 0;
    double u = 0.0;
    Vec2 p = poly[0];
    if (out) out->assign(1, p);
    for (std::size_t k = 0; k < count; ++k) {
      // First exit of the disk of radius c around p, walking forward.
      for (std::size_t guard = 0; guard <= 2 * m; ++guard) {
        const Vec2 a = poly[seg];
        const Vec2 b = poly[(seg + 1) % m];
        const Vec2 d = b - a;
        const Vec2 w = a - p;
        const double qa = dot(d, d);
        const double qb = 2.0 * dot(w, d);
        const double qc = dot(w, w) - c * c;
        const double disc = std::max(qb * qb - 4.0 * qa * qc, 0.0);
        const double s = (-qb + std::sqrt(disc)) / (2.0 * qa);
        if (s >= u && s <= 1.0) {
          u = s;
          p = a + d * s;
          break;
        }
        u = 0.0;
        if (++seg == m) {
          seg = 0;
          ++laps;
        }
      }
      if (out && k + 1 < count) out->push_back(p);
    }
    const double seg_len = distance(poly[seg], poly[(seg + 1) % m]);
    return static_cast<double>(laps) * total + cumulative[seg] + u * seg_len;
  }
};

}  // namespace

ClosedCurve resample_arclength(std::span<const Vec2> points, std::size_t n) {
  if (n < ClosedCurve::kMinSamples) throw Error(ErrorCode::kDomain, "resample needs n >= 8");
  const std::vector<Vec2> poly = clean_polyline(points);
  if (poly.size() < 3) throw Error(ErrorCode::kDegenerate, "degenerate polyline");
  const ChordWalk walker(poly);
  if (!(walker.total > 0.0)) throw Error(ErrorCode::kDegenerate, "degenerate polyline");

  // Equal chords c whose n-step walk returns exactly to the start. Chords are
  // never longer than the arcs they span, so c = L/n overshoots.
  const double target = walker.total;
  double lo = 0.25 * target / static_cast<double>(n);
  double hi = target / static_cast<double>(n);
  if (walker.walk(hi, n, nullptr) - target <= 1e-12 * target) {
    lo = hi;
  } else {
    for (int it = 0; it < 100 && hi - lo > 1e-15 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (walker.walk(mid, n, nullptr) < target) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  std::vector<Vec2> samples;
  walker.walk(lo, n, &samples);
  ClosedCurve curve(std::move(samples));
  return curve.scaled(target / curve.length(), centroid(curve.points()));
}

GaussRep gauss_from_curve(const ClosedCurve& c) {
  const std::size_t n = c.size();
  GaussRep g;
  g.alpha.resize(n);
  g.base = c[0];
  g.step = c.length() / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 t = c[i + 1] - c[i + n - 1];
    const double raw = std::atan2(t.y, t.x);
    g.alpha[i] = i == 0 ? raw : g.alpha[i - 1] + wrap_angle(raw - g.alpha[i - 1]);
  }
  return g;
}

Reconstruction curve_from_gauss(const GaussRep& g) {
  const std::size_t n = g.size();
  Reconstruction rec;
  rec.points.resize(n);
  Vec2 p = g.base;
  Vec2 sum;
  for (std::size_t i = 0; i < n; ++i) {
    rec.points[i] = p;
    const double a0 = g.alpha[i];
    const double a1 = g.lifted(static_cast<long>(i) + 1);
    const Vec2 t0{std::cos(a0), std::sin(a0)};
    const Vec2 t1{std::cos(a1), std::sin(a1)};
    p += (t0 + t1) * (0.5 * g.step);
    sum += t0;
  }
  rec.closure_gap = p - g.base;
  const Vec2 integrals = sum * g.step;
  rec.closed = norm(integrals) <= kClosureTolerance * kTwoPi;
  return rec;
}

std::vector<Vec2> close_with_linear_correction(std::vector<Vec2> points, Vec2 gap) {
  const double n = static_cast<double>(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) points[i] -= gap * (static_cast<double>(i) / n);
  return points;
}

ClosureReport closure_report(const GaussRep& g) {
  ClosureReport r;
  for (double a : g.alpha) {
    r.cos_integral += std::cos(a);
    r.sin_integral += std::sin(a);
  }
  r.cos_integral *= g.step;
  r.sin_integral *= g.step;
  const double defect = g.lift_defect();
  r.angle_defect_mod_2pi = wrap_angle(defect);
  r.whitney = static_cast<int>(std::lround(defect / kTwoPi));
  return r;
}

int whitney_index(const ClosedCurve& c) {
  const std::size_t n = c.size();
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 d0 = c[i + 1] - c[i];
    const Vec2 d1 = c[i + 2] - c[i + 1];
    const double turn = std::atan2(cross(d0, d1), dot(d0, d1));
    if (std::abs(turn) >= 0.5 * kPi) {
      std::ostringstream msg;
      msg << "curve not regular at sample " << (i + 1) % n;
      throw Error(ErrorCode::kNotRegular, msg.str());
    }
    turning += turn;
  }
  return static_cast<int>(std::lround(turning / kTwoPi));
}

}  // namespace flatknot
