#pragma once

#include <array>
#include <vector>

#include "flatknot/geometry.hpp"

namespace flatknot {

// A planar map whose vertices are crossings of two strands. Slots 0 and 1
// belong to strand 0, slots 2 and 3 to strand 1; a path that enters and
// leaves through slots of the same strand passes straight, otherwise it
// turns. Lattice boundary vertices leave some slots empty.
struct Slot {
  int edge = -1;          // -1: no edge in this slot
  bool outgoing = false;  // the edge's polyline starts at this vertex
  bool over = false;      // the slot's strand is the over strand here

  bool used() const { return edge >= 0; }
};

inline constexpr int strand_of(int slot) { return slot / 2; }

struct GraphVertex {
  Vec2 position;
  std::array<Slot, 4> slots;
};

struct GraphEdge {
  int from = -1;
  int from_slot = -1;
  int to = -1;
  int to_slot = -1;
  std::vector<Vec2> polyline;  // from the `from` vertex to the `to` vertex, both included
};

struct CycleGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  // A crossing-free diagram has no vertices; its single cycle is this polygon.
  std::vector<Vec2> free_loop;

  int add_vertex(Vec2 position) {
    vertices.push_back(GraphVertex{position, {}});
    return static_cast<int>(vertices.size()) - 1;
  }
  // Connects (from, from_slot) to (to, to_slot) with the given polyline.
  int add_edge(int from, int from_slot, int to, int to_slot, std::vector<Vec2> polyline);
};

}  // namespace flatknot
