#include "flatknot/cycles.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatknot/errors.hpp"

namespace flatknot {

namespace {

struct EdgeEnd {
  int vertex;
  int slot;
};

// Where leaving `vertex` through `slot` arrives.
EdgeEnd far_end(const CycleGraph& g, int vertex, int slot, bool* forward) {
  const Slot& s = g.vertices[static_cast<std::size_t>(vertex)].slots[static_cast<std::size_t>(slot)];
  const GraphEdge& e = g.edges[static_cast<std::size_t>(s.edge)];
  if (forward) *forward = s.outgoing;
  return s.outgoing ? EdgeEnd{e.to, e.to_slot} : EdgeEnd{e.from, e.from_slot};
}

const Slot& slot_at(const CycleGraph& g, int vertex, int slot) {
  return g.vertices[static_cast<std::size_t>(vertex)].slots[static_cast<std::size_t>(slot)];
}

std::vector<Vec2> chain_polyline(const CycleGraph& g, const std::vector<CycleStep>& steps) {
  std::vector<Vec2> poly;
  for (const CycleStep& st : steps) {
    const std::vector<Vec2>& p = g.edges[static_cast<std::size_t>(st.edge)].polyline;
    if (st.forward) {
      poly.insert(poly.end(), p.begin(), p.end() - 1);
    } else {
      poly.insert(poly.end(), p.rbegin(), p.rend() - 1);
    }
  }
  return poly;
}

DiagramCycle free_loop_cycle(const CycleGraph& g) {
  DiagramCycle cy;
  Arc arc;
  arc.closed = true;
  cy.arcs.push_back(arc);
  cy.polyline = g.free_loop;
  cy.area = std::abs(signed_area(cy.polyline));
  cy.alternated = true;
  return cy;
}

class Enumerator {
 public:
  Enumerator(const CycleGraph& g, const CycleOptions& opt, std::vector<DiagramCycle>* out)
      : g_(g), opt_(opt), out_(out), visited_(g.vertices.size(), 0) {}

  void run() {
    const int nv = static_cast<int>(g_.vertices.size());
    for (start_ = 0; start_ < nv; ++start_) {
      visited_[static_cast<std::size_t>(start_)] = 1;
      for (int a = 0; a < 4; ++a) {
        if (!edge_allowed(start_, a)) continue;
        bool fwd = true;
        const EdgeEnd end = far_end(g_, start_, a, &fwd);
        first_slot_ = a;
        vertices_.assign(1, start_);
        out_slots_.assign(1, a);
        in_slots_.assign(1, -1);
        steps_.assign(1, CycleStep{slot_at(g_, start_, a).edge, fwd});
        if (end.vertex == start_) {
          if (fwd) close(end.slot, 0);  // each loop edge once
          continue;
        }
        if (end.vertex < start_) continue;
        extend(end.vertex, end.slot, 0);
      }
      visited_[static_cast<std::size_t>(start_)] = 0;
    }
  }

  std::uint64_t emitted() const { return emitted_; }

 private:
  bool edge_allowed(int v, int s) const {
    const Slot& sl = slot_at(g_, v, s);
    if (!sl.used()) return false;
    return opt_.edge_mask.empty() || opt_.edge_mask[static_cast<std::size_t>(sl.edge)];
  }

  void extend(int v, int in_slot, int turns) {
    visited_[static_cast<std::size_t>(v)] = 1;
    vertices_.push_back(v);
    in_slots_.push_back(in_slot);
    out_slots_.push_back(-1);
    steps_.emplace_back();
    for (int s = 0; s < 4; ++s) {
      if (s == in_slot || !edge_allowed(v, s)) continue;
      const int t = turns + (strand_of(s) != strand_of(in_slot) ? 1 : 0);
      if (opt_.arc_cap && t > *opt_.arc_cap) continue;
      bool fwd = true;
      const EdgeEnd end = far_end(g_, v, s, &fwd);
      out_slots_.back() = s;
      steps_.back() = CycleStep{slot_at(g_, v, s).edge, fwd};
      if (end.vertex == start_) {
        if (end.slot != first_slot_ && steps_.front().edge < steps_.back().edge) close(end.slot, t);
      } else if (end.vertex > start_ && !visited_[static_cast<std::size_t>(end.vertex)]) {
        extend(end.vertex, end.slot, t);
      }
    }
    steps_.pop_back();
    out_slots_.pop_back();
    in_slots_.pop_back();
    vertices_.pop_back();
    visited_[static_cast<std::size_t>(v)] = 0;
  }

  void close(int closing_slot, int turns) {
    const int total_turns = turns + (strand_of(closing_slot) != strand_of(first_slot_) ? 1 : 0);
    if (opt_.arc_cap && std::max(total_turns, 1) > *opt_.arc_cap) return;
    if (++examined_ > opt_.hard_limit) {
      std::ostringstream msg;
      msg << "cycle explosion: more than " << opt_.hard_limit << " cycles (" << emitted_ << " kept so far)";
      throw Error(ErrorCode::kCycleExplosion, msg.str());
    }
    in_slots_.front() = closing_slot;
    if (out_ == nullptr && !opt_.alternated_only && !opt_.area_cap) {
      ++emitted_;
      return;
    }
    DiagramCycle cy = build();
    in_slots_.front() = -1;
    if (opt_.alternated_only && !cy.alternated) return;
    if (opt_.area_cap && !(cy.area < *opt_.area_cap)) return;
    ++emitted_;
    if (out_) out_->push_back(std::move(cy));
  }

  DiagramCycle build() const {
    DiagramCycle cy;
    cy.vertices = vertices_;
    cy.steps = steps_;
    const std::size_t len = vertices_.size();
    cy.turns.resize(len);
    std::vector<std::size_t> turn_at;
    for (std::size_t k = 0; k < len; ++k) {
      cy.turns[k] = strand_of(in_slots_[k]) != strand_of(out_slots_[k]);
      if (cy.turns[k]) turn_at.push_back(k);
    }
    for (std::size_t a = 0; a < turn_at.size(); ++a) {
      const std::size_t from = turn_at[a];
      const std::size_t to = turn_at[(a + 1) % turn_at.size()];
      Arc arc;
      arc.start_vertex = vertices_[from];
      arc.end_vertex = vertices_[to];
      arc.start_over = slot_at(g_, vertices_[from], out_slots_[from]).over;
      arc.end_over = slot_at(g_, vertices_[to], in_slots_[to]).over;
      for (std::size_t k = (from + 1) % len; k != to; k = (k + 1) % len) arc.pass_through.push_back(vertices_[k]);
      cy.arcs.push_back(std::move(arc));
    }
    cy.alternated = std::all_of(cy.arcs.begin(), cy.arcs.end(), [](const Arc& a) { return a.alternated(); });
    cy.polyline = chain_polyline(g_, steps_);
    cy.area = std::abs(signed_area(cy.polyline));
    return cy;
  }

  const CycleGraph& g_;
  const CycleOptions& opt_;
  std::vector<DiagramCycle>* out_;
  std::vector<char> visited_;
  std::vector<int> vertices_, in_slots_, out_slots_;
  std::vector<CycleStep> steps_;
  int start_ = 0;
  int first_slot_ = 0;
  std::uint64_t examined_ = 0;
  std::uint64_t emitted_ = 0;
};

bool free_loop_passes(const DiagramCycle& cy, const CycleOptions& opt) {
  if (opt.arc_cap && *opt.arc_cap < 1) return false;
  return !opt.area_cap || cy.area < *opt.area_cap;
}

}  // namespace

std::vector<int> DiagramCycle::key() const {
  const std::size_t len = steps.size();
  if (len == 0) return {};
  std::size_t k0 = 0;
  for (std::size_t k = 1; k < len; ++k) {
    if (vertices[k] < vertices[k0]) k0 = k;
  }
  std::vector<int> fwd, bwd;
  for (std::size_t k = 0; k < len; ++k) {
    fwd.push_back(steps[(k0 + k) % len].edge);
    bwd.push_back(steps[(k0 + len - 1 - k) % len].edge);
  }
  if (len == 1) return fwd;
  return fwd.front() < fwd.back() ? fwd : bwd;
}

std::vector<DiagramCycle> enumerate_cycles(const CycleGraph& g, const CycleOptions& options) {
  std::vector<DiagramCycle> out;
  if (g.vertices.empty()) {
    if (!g.free_loop.empty()) {
      DiagramCycle cy = free_loop_cycle(g);
      if (free_loop_passes(cy, options)) out.push_back(std::move(cy));
    }
    return out;
  }
  Enumerator(g, options, &out).run();
  std::vector<std::pair<std::vector<int>, std::size_t>> order;
  order.reserve(out.size());
  for (std::size_t i = 0; i < out.size(); ++i) order.emplace_back(out[i].key(), i);
  std::sort(order.begin(), order.end(), [&](const auto& a, const auto& b) {
    const std::size_t na = out[a.second].arc_count(), nb = out[b.second].arc_count();
    return na != nb ? na < nb : a.first < b.first;
  });
  std::vector<DiagramCycle> sorted;
  sorted.reserve(out.size());
  for (const auto& o : order) sorted.push_back(std::move(out[o.second]));
  return sorted;
}

std::vector<DiagramCycle> enumerate_cycles(const KnotDiagram& d, const CycleOptions& options) {
  return enumerate_cycles(d.graph(), options);
}

std::uint64_t count_cycles(const CycleGraph& g, const CycleOptions& options) {
  if (g.vertices.empty()) {
    if (g.free_loop.empty()) return 0;
    return free_loop_passes(free_loop_cycle(g), options) ? 1 : 0;
  }
  Enumerator e(g, options, nullptr);
  e.run();
  return e.emitted();
}

double cycle_area(const DiagramCycle& cy) { return std::abs(signed_area(cy.polyline)); }

CycleCensus census(const std::vector<DiagramCycle>& cycles) {
  CycleCensus c;
  for (const DiagramCycle& cy : cycles) {
    ++c.counts_by_arcs[cy.arc_count()];
    if (cy.alternated) ++c.alternated;
    ++c.total;
  }
  return c;
}

std::vector<Face> faces(const CycleGraph& g) {
  const std::size_t nv = g.vertices.size();
  // Slots of each vertex sorted counterclockwise by outgoing direction.
  std::vector<std::vector<int>> ccw(nv);
  for (std::size_t v = 0; v < nv; ++v) {
    std::vector<std::pair<double, int>> dirs;
    for (int s = 0; s < 4; ++s) {
      const Slot& sl = g.vertices[v].slots[static_cast<std::size_t>(s)];
      if (!sl.used()) continue;
      const std::vector<Vec2>& p = g.edges[static_cast<std::size_t>(sl.edge)].polyline;
      const Vec2 origin = g.vertices[v].position;
      Vec2 d;
      if (sl.outgoing) {
        for (std::size_t k = 1; k < p.size() && norm(d) == 0.0; ++k) d = p[k] - origin;
      } else {
        for (std::size_t k = p.size() - 1; k-- > 0 && norm(d) == 0.0;) d = p[k] - origin;
      }
      dirs.emplace_back(std::atan2(d.y, d.x), s);
    }
    std::sort(dirs.begin(), dirs.end());
    for (const auto& d : dirs) ccw[v].push_back(d.second);
  }
  auto clockwise_next = [&](int v, int slot) {
    const std::vector<int>& order = ccw[static_cast<std::size_t>(v)];
    const auto it = std::find(order.begin(), order.end(), slot);
    const std::size_t i = static_cast<std::size_t>(it - order.begin());
    return order[(i + order.size() - 1) % order.size()];
  };

  std::vector<Face> out;
  std::vector<char> used(2 * g.edges.size(), 0);
  for (std::size_t e0 = 0; e0 < g.edges.size(); ++e0) {
    for (int dir = 0; dir < 2; ++dir) {
      if (used[2 * e0 + static_cast<std::size_t>(dir)]) continue;
      Face f;
      CycleStep st{static_cast<int>(e0), dir == 0};
      while (!used[2 * static_cast<std::size_t>(st.edge) + (st.forward ? 0 : 1)]) {
        used[2 * static_cast<std::size_t>(st.edge) + (st.forward ? 0 : 1)] = 1;
        f.boundary.push_back(st);
        const GraphEdge& e = g.edges[static_cast<std::size_t>(st.edge)];
        const int v = st.forward ? e.to : e.from;
        const int arrive = st.forward ? e.to_slot : e.from_slot;
        const int leave = clockwise_next(v, arrive);
        const Slot& sl = slot_at(g, v, leave);
        st = CycleStep{sl.edge, sl.outgoing};
      }
      f.signed_area = signed_area(chain_polyline(g, f.boundary));
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace flatknot
