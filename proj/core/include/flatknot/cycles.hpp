#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flatknot/diagram.hpp"
#include "flatknot/graph.hpp"

namespace flatknot {

struct CycleStep {
  int edge = -1;
  bool forward = true;  // traversed from the edge's `from` vertex
};

// Maximal piece of a cycle between consecutive turn vertices. Straight
// pass-throughs inside the arc do not affect alternation.
struct Arc {
  int start_vertex = -1;
  int end_vertex = -1;
  bool start_over = false;  // the arc leaves start_vertex along the over strand
  bool end_over = false;    // the arc reaches end_vertex along the over strand
  std::vector<int> pass_through;
  bool closed = false;  // crossing-free loop: no endpoints, alternated vacuously

  bool alternated() const { return closed || start_over != end_over; }
};

// An embedded circle in the diagram: at every visited vertex it either
// passes straight or turns; no vertex or edge is used twice.
struct DiagramCycle {
  std::vector<int> vertices;  // vertices[k] is where steps[k] starts
  std::vector<CycleStep> steps;
  std::vector<bool> turns;    // per entry of `vertices`
  std::vector<Arc> arcs;
  std::vector<Vec2> polyline;
  double area = 0.0;
  bool alternated = false;

  std::size_t arc_count() const { return arcs.size(); }
  // Edge ids starting at the smallest vertex, in the direction whose first
  // edge id is smaller than its last.
  std::vector<int> key() const;
};

struct CycleOptions {
  std::optional<double> area_cap;  // keep cycles with area < cap
  std::optional<int> arc_cap;      // keep cycles with at most this many arcs
  bool alternated_only = false;
  // Restricts the search to these edges (by id) when non-empty.
  std::vector<bool> edge_mask;
  std::uint64_t hard_limit = 10'000'000;
};

// Every embedded cycle, in canonical order (arc count, then key). Throws
// Error(kCycleExplosion) with the partial count past options.hard_limit.
std::vector<DiagramCycle> enumerate_cycles(const CycleGraph& g, const CycleOptions& options = {});
std::vector<DiagramCycle> enumerate_cycles(const KnotDiagram& d, const CycleOptions& options = {});

// Number of cycles without materializing them (same filters, no area cap).
std::uint64_t count_cycles(const CycleGraph& g, const CycleOptions& options = {});

double cycle_area(const DiagramCycle& cy);

struct CycleCensus {
  std::map<std::size_t, std::uint64_t> counts_by_arcs;
  std::uint64_t alternated = 0;
  std::uint64_t total = 0;
};

CycleCensus census(const std::vector<DiagramCycle>& cycles);

// Bounded and unbounded faces of the planar map; bounded faces have positive
// signed area. Requires at least one vertex.
struct Face {
  std::vector<CycleStep> boundary;
  double signed_area = 0.0;
};
std::vector<Face> faces(const CycleGraph& g);

}  // namespace flatknot
