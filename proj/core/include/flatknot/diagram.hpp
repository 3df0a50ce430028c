#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "flatknot/curve.hpp"
#include "flatknot/graph.hpp"

namespace flatknot {

// A transversal double point of the sampled curve. Passages are located by
// their traversal parameter: segment index plus the fraction along it.
struct Crossing {
  Vec2 position;
  double first_param = 0.0;   // earlier passage along the traversal
  double second_param = 0.0;  // later passage
  bool first_over = true;
  double transversality_angle = 0.0;  // in (0, pi)

  double over_param() const { return first_over ? first_param : second_param; }
  double under_param() const { return first_over ? second_param : first_param; }
  int first_segment() const { return static_cast<int>(first_param); }
  int second_segment() const { return static_cast<int>(second_param); }
};

class KnotDiagram {
 public:
  KnotDiagram(ClosedCurve curve, std::vector<Crossing> crossings);

  const ClosedCurve& curve() const { return curve_; }
  const std::vector<Crossing>& crossings() const { return crossings_; }
  // Vertex i of the graph is crossing i.
  const CycleGraph& graph() const { return graph_; }
  std::size_t crossing_count() const { return crossings_.size(); }
  // Curve sample indices strictly inside each graph edge, in edge direction.
  const std::vector<std::vector<std::size_t>>& edge_samples() const { return edge_samples_; }

  // Same crossings, curve scaled about the origin.
  KnotDiagram scaled(double factor) const;

 private:
  ClosedCurve curve_;
  std::vector<Crossing> crossings_;
  CycleGraph graph_;
  std::vector<std::vector<std::size_t>> edge_samples_;
};

// Over/under passes alternate along the traversal, starting with "over".
struct AlternatingRule {};

// Given types; each entry is matched to a detected crossing by its pair of
// segment indices, or else by nearest position.
struct CrossingType {
  Vec2 position;
  int over_segment = -1;
  int under_segment = -1;
};
struct ExplicitRule {
  std::vector<CrossingType> types;
};

// Types carried over from an earlier diagram of the same sample indexing.
// A crossing matches when both passage parameters lie within `tolerance`
// samples of the old ones. Unmatched crossings are paired by passage
// proximity and each pair gets one strand over at both; a leftover takes the
// earlier passage over.
struct InheritRule {
  const KnotDiagram* previous = nullptr;
  double tolerance = 2.0;
};

using OverUnderRule = std::variant<AlternatingRule, ExplicitRule, InheritRule>;

// Thresholds for the codimension-one configurations rejected by detect_crossings.
inline constexpr double kCodimensionOneTolerance = 1e-9;

// All proper self-intersections of the closed polygon. Throws
// Error(kCodimensionOne) with the location on a tangency or triple point.
KnotDiagram detect_crossings(const ClosedCurve& c, const OverUnderRule& rule = AlternatingRule{});

// Raw intersection search without type assignment (first_over = true).
std::vector<Crossing> find_self_intersections(const ClosedCurve& c);

// Circular distance between traversal parameters on a curve of n samples.
double param_distance(double a, double b, std::size_t n);

// For each crossing of `after`, the index of the matching crossing of
// `before` (both passages within `tolerance` samples), or -1.
std::vector<int> match_crossings(const KnotDiagram& before, const KnotDiagram& after, double tolerance);

}  // namespace flatknot
