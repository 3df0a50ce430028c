#include "flatknot/graph.hpp"

#include <stdexcept>

namespace flatknot {

int CycleGraph::add_edge(int from, int from_slot, int to, int to_slot, std::vector<Vec2> polyline) {
  Slot& a = vertices.at(static_cast<std::size_t>(from)).slots.at(static_cast<std::size_t>(from_slot));
  Slot& b = vertices.at(static_cast<std::size_t>(to)).slots.at(static_cast<std::size_t>(to_slot));
  if (a.used() || b.used()) throw std::logic_error("graph slot already occupied");
  const int id = static_cast<int>(edges.size());
  a.edge = id;
  a.outgoing = true;
  b.edge = id;
  b.outgoing = false;
  edges.push_back(GraphEdge{from, from_slot, to, to_slot, std::move(polyline)});
  return id;
}

}  // namespace flatknot
