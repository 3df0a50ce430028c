#pragma once

#include <optional>
#include <span>
#include <vector>

#include "flatknot/geometry.hpp"

namespace flatknot {

// A closed planar polygon sampled (approximately) uniformly in arclength.
// Index arithmetic is modulo size(); the closing segment runs from the last
// point back to the first.
class ClosedCurve {
 public:
  static constexpr std::size_t kMinSamples = 8;

  // Throws Error(kDegenerate) for fewer than kMinSamples points or zero length.
  explicit ClosedCurve(std::vector<Vec2> points);

  std::span<const Vec2> points() const { return points_; }
  const Vec2& operator[](std::size_t i) const { return points_[i % points_.size()]; }
  std::size_t size() const { return points_.size(); }
  double length() const { return length_; }

  // max/min segment length; 1 for an equilateral polygon.
  double segment_ratio() const;

  ClosedCurve reversed() const;
  ClosedCurve scaled(double factor, Vec2 about = {}) const;
  ClosedCurve translated(Vec2 offset) const;
  ClosedCurve rotated(double angle, Vec2 about = {}) const;
  // Cyclic relabeling: sample i of the result is sample (i + shift) of this.
  ClosedCurve shifted(std::size_t shift) const;
  // Uniform scaling about the centroid to the given total length.
  ClosedCurve with_length(double target) const;

 private:
  std::vector<Vec2> points_;
  double length_ = 0.0;
};

// Turning-angle samples alpha[i] on a uniform arclength grid of spacing `step`.
// The lift continues periodically: alpha[i + N] = alpha[i] + (alpha_end() - alpha[0]).
struct GaussRep {
  std::vector<double> alpha;
  Vec2 base;
  double step = 0.0;
  // Value of the continued lift at t = N * step when it is known analytically.
  // Absent means: continue alpha[N-1] by the increment of smallest magnitude
  // that lands on alpha[0] modulo 2*pi.
  std::optional<double> end_value;

  std::size_t size() const { return alpha.size(); }
  double length() const { return step * static_cast<double>(alpha.size()); }
  double alpha_end() const;
  // alpha_end() - alpha[0].
  double lift_defect() const;
  // Lifted value at any integer index, continuing periodically by the defect.
  double lifted(long i) const;
};

struct ClosureReport {
  double cos_integral = 0.0;
  double sin_integral = 0.0;
  double angle_defect_mod_2pi = 0.0;
  int whitney = 0;
};

struct Reconstruction {
  std::vector<Vec2> points;  // N points starting at the base point
  Vec2 closure_gap;          // endpoint of the integration minus the base point
  bool closed = false;       // gap small enough to be snapped shut

  // The polygon through `points`; throws Error(kDegenerate) when the
  // reconstruction is not closed.
  ClosedCurve curve() const;
};

// Closure integrals at or below this bound (times 2*pi) count as closed.
inline constexpr double kClosureTolerance = 1e-8;

ClosedCurve resample_arclength(std::span<const Vec2> points, std::size_t n);

GaussRep gauss_from_curve(const ClosedCurve& c);

Reconstruction curve_from_gauss(const GaussRep& g);

// Subtracts the linear drift gap * i / N so the polygon closes exactly.
std::vector<Vec2> close_with_linear_correction(std::vector<Vec2> points, Vec2 gap);

ClosureReport closure_report(const GaussRep& g);

// Throws Error(kNotRegular) if consecutive segment directions differ by pi/2 or more.
int whitney_index(const ClosedCurve& c);

}  // namespace flatknot
