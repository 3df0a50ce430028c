#include "flatknot/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "flatknot/errors.hpp"

namespace flatknot {

namespace {

[[noreturn]] void codimension_one(const char* what, Vec2 where) {
  std::ostringstream msg;
  msg << "codimension-one configuration (" << what << ") at (" << where.x << ", " << where.y << ")";
  throw Error(ErrorCode::kCodimensionOne, msg.str());
}

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
  const std::size_t d = i > j ? i - j : j - i;
  return d <= 1 || d == n - 1;
}

// Collinear overlapping segments have no isolated intersection point.
bool collinear_overlap(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
  const Vec2 da = a1 - a0;
  const double scale = dot(da, da);
  if (scale == 0.0) return false;
  if (std::abs(cross(b0 - a0, da)) > 1e-12 * scale || std::abs(cross(b1 - a0, da)) > 1e-12 * scale) return false;
  const double t0 = dot(b0 - a0, da) / scale;
  const double t1 = dot(b1 - a0, da) / scale;
  return std::max(t0, t1) >= 0.0 && std::min(t0, t1) <= 1.0;
}

// Parameters this close to a segment start count as a hit on the vertex.
constexpr double kVertexHit = 1e-9;

// True when direction w lies strictly inside the counterclockwise sweep from u to v.
bool in_sweep(Vec2 u, Vec2 v, Vec2 w) {
  auto turn = [&](Vec2 d) {
    const double a = std::atan2(cross(u, d), dot(u, d));
    return a < 0.0 ? a + kTwoPi : a;
  };
  const double tw = turn(w);
  return tw > 0.0 && tw < turn(v);
}

// A hit on a polygon vertex is a crossing only if the other passage goes
// from one side of the corner to the other.
void check_vertex_crossing(const ClosedCurve& c, std::size_t lo, double ta, std::size_t hi, double tb, Vec2 p) {
  const std::size_t n = c.size();
  auto ends = [&](std::size_t seg, double t) {
    const bool at_vertex = t < kVertexHit;
    return std::pair<Vec2, Vec2>{at_vertex ? c[seg + n - 1] : c[seg], c[seg + 1]};
  };
  const auto [ap, an] = ends(lo, ta);
  const auto [bp, bn] = ends(hi, tb);
  const Vec2 u = ap - p, v = an - p;
  const Vec2 w0 = bp - p, w1 = bn - p;
  const double eps = 1e-12 * (norm(u) + norm(v)) * (norm(w0) + norm(w1));
  for (const Vec2 w : {w0, w1}) {
    if (std::abs(cross(u, w)) < eps && dot(u, w) > 0.0) codimension_one("tangency", p);
    if (std::abs(cross(v, w)) < eps && dot(v, w) > 0.0) codimension_one("tangency", p);
  }
  if (in_sweep(u, v, w0) == in_sweep(u, v, w1)) codimension_one("tangency", p);
}

}  // namespace

double param_distance(double a, double b, std::size_t n) {
  const double d = std::abs(a - b);
  return std::min(d, static_cast<double>(n) - d);
}

std::vector<Crossing> find_self_intersections(const ClosedCurve& c) {
  const std::size_t n = c.size();
  struct Box {
    double xmin, xmax, ymin, ymax;
  };
  std::vector<Box> box(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = c[i], b = c[i + 1];
    box[i] = {std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y), std::max(a.y, b.y)};
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) { return box[u].xmin < box[v].xmin; });

  std::vector<Crossing> out;
  for (std::size_t oi = 0; oi < n; ++oi) {
    const std::size_t i = order[oi];
    for (std::size_t oj = oi + 1; oj < n && box[order[oj]].xmin <= box[i].xmax; ++oj) {
      const std::size_t j = order[oj];
      if (box[j].ymin > box[i].ymax || box[j].ymax < box[i].ymin) continue;
      if (adjacent(i, j, n)) continue;
      const std::size_t lo = std::min(i, j), hi = std::max(i, j);
      const Vec2 a0 = c[lo], a1 = c[lo + 1], b0 = c[hi], b1 = c[hi + 1];
      SegmentHit hit;
      if (!intersect_segments(a0, a1, b0, b1, hit)) {
        if (collinear_overlap(a0, a1, b0, b1)) codimension_one("collinear overlap", a0);
        continue;
      }
      const Vec2 da = a1 - a0, db = b1 - b0;
      const double s = cross(da, db) / (norm(da) * norm(db));
      if (std::abs(s) < kCodimensionOneTolerance) codimension_one("tangency", hit.point);
      if (hit.ta < kVertexHit || hit.tb < kVertexHit) check_vertex_crossing(c, lo, hit.ta, hi, hit.tb, hit.point);
      Crossing x;
      x.position = hit.point;
      x.first_param = static_cast<double>(lo) + hit.ta;
      x.second_param = static_cast<double>(hi) + hit.tb;
      x.transversality_angle = std::acos(std::clamp(dot(da, db) / (norm(da) * norm(db)), -1.0, 1.0));
      out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& a, const Crossing& b) {
    return a.first_param < b.first_param || (a.first_param == b.first_param && a.second_param < b.second_param);
  });
  for (std::size_t a = 0; a < out.size(); ++a) {
    for (std::size_t b = a + 1; b < out.size(); ++b) {
      if (distance(out[a].position, out[b].position) < kCodimensionOneTolerance) {
        codimension_one("triple point", out[a].position);
      }
    }
  }
  return out;
}

namespace {

struct Passage {
  double param;
  int crossing;
  int strand;  // 0: first passage, 1: second
};

std::vector<Passage> sorted_passages(const std::vector<Crossing>& crossings) {
  std::vector<Passage> ps;
  ps.reserve(2 * crossings.size());
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    ps.push_back({crossings[i].first_param, static_cast<int>(i), 0});
    ps.push_back({crossings[i].second_param, static_cast<int>(i), 1});
  }
  std::sort(ps.begin(), ps.end(), [](const Passage& a, const Passage& b) { return a.param < b.param; });
  return ps;
}

void assign_alternating(std::vector<Crossing>& crossings) {
  const std::vector<Passage> ps = sorted_passages(crossings);
  std::vector<int> first_pos(crossings.size(), -1), second_pos(crossings.size(), -1);
  for (std::size_t k = 0; k < ps.size(); ++k) {
    (ps[k].strand == 0 ? first_pos : second_pos)[static_cast<std::size_t>(ps[k].crossing)] = static_cast<int>(k);
  }
  for (std::size_t i = 0; i < crossings.size(); ++i) {
    const bool parity_ok = (first_pos[i] + second_pos[i]) % 2 == 1;
    crossings[i].first_over = parity_ok ? first_pos[i] % 2 == 0 : true;
  }
}

void assign_explicit(std::vector<Crossing>& crossings, const ExplicitRule& rule) {
  std::vector<bool> taken(rule.types.size(), false);
  for (Crossing& x : crossings) {
    const int sa = x.first_segment(), sb = x.second_segment();
    int best = -1;
    for (std::size_t k = 0; k < rule.types.size(); ++k) {
      const CrossingType& t = rule.types[k];
      if (!taken[k] && ((t.over_segment == sa && t.under_segment == sb) || (t.over_segment == sb && t.under_segment == sa))) {
        best = static_cast<int>(k);
        break;
      }
    }
    if (best < 0) {
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < rule.types.size(); ++k) {
        const double d = distance(rule.types[k].position, x.position);
        if (!taken[k] && d < best_d) {
          best_d = d;
          best = static_cast<int>(k);
        }
      }
    }
    if (best < 0) {
      std::ostringstream msg;
      msg << "crossing at (" << x.position.x << ", " << x.position.y << ") has no over/under data";
      throw Error(ErrorCode::kFormat, msg.str());
    }
    taken[static_cast<std::size_t>(best)] = true;
    const CrossingType& t = rule.types[static_cast<std::size_t>(best)];
    if (t.over_segment == sa || t.under_segment == sb) {
      x.first_over = true;
    } else if (t.over_segment == sb || t.under_segment == sa) {
      x.first_over = false;
    } else {
      // Matched by position only: the over segment is the nearer of the two passages.
      x.first_over = std::abs(t.over_segment - sa) <= std::abs(t.over_segment - sb);
    }
  }
}

struct Match {
  int index = -1;
  bool swapped = false;  // the passages exchanged first/second roles
};

Match match_one(const Crossing& x, const std::vector<Crossing>& old, std::size_t n, double tolerance,
                std::vector<bool>& taken) {
  Match best;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < old.size(); ++k) {
    if (taken[k]) continue;
    const double same = std::max(param_distance(x.first_param, old[k].first_param, n),
                                 param_distance(x.second_param, old[k].second_param, n));
    const double swapped = std::max(param_distance(x.first_param, old[k].second_param, n),
                                    param_distance(x.second_param, old[k].first_param, n));
    const double d = std::min(same, swapped);
    if (d <= tolerance && d < best_d) {
      best_d = d;
      best = Match{static_cast<int>(k), swapped < same};
    }
  }
  if (best.index >= 0) taken[static_cast<std::size_t>(best.index)] = true;
  return best;
}

// New crossings come in pairs when one strand is pushed across another.
// The pushed strand lies on one side, so it is over at both crossings of the
// pair. Pairs are formed greedily by passage proximity.
void settle_fresh_pairs(std::vector<Crossing>& xs, std::vector<std::size_t> fresh, std::size_t n) {
  while (fresh.size() >= 2) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 1;
    bool best_swapped = false;
    for (std::size_t i = 0; i < fresh.size(); ++i) {
      for (std::size_t j = i + 1; j < fresh.size(); ++j) {
        const Crossing& a = xs[fresh[i]];
        const Crossing& b = xs[fresh[j]];
        const double same = param_distance(a.first_param, b.first_param, n) + param_distance(a.second_param, b.second_param, n);
        const double swapped = param_distance(a.first_param, b.second_param, n) + param_distance(a.second_param, b.first_param, n);
        if (std::min(same, swapped) < best) {
          best = std::min(same, swapped);
          bi = i;
          bj = j;
          best_swapped = swapped < same;
        }
      }
    }
    xs[fresh[bi]].first_over = true;
    xs[fresh[bj]].first_over = !best_swapped;
    fresh.erase(fresh.begin() + static_cast<long>(bj));
    fresh.erase(fresh.begin() + static_cast<long>(bi));
  }
}

}  // namespace

std::vector<int> match_crossings(const KnotDiagram& before, const KnotDiagram& after, double tolerance) {
  const std::size_t n = after.curve().size();
  std::vector<bool> taken(before.crossings().size(), false);
  std::vector<int> out;
  out.reserve(after.crossings().size());
  for (const Crossing& x : after.crossings()) out.push_back(match_one(x, before.crossings(), n, tolerance, taken).index);
  return out;
}

KnotDiagram detect_crossings(const ClosedCurve& c, const OverUnderRule& rule) {
  std::vector<Crossing> crossings = find_self_intersections(c);
  if (std::holds_alternative<AlternatingRule>(rule)) {
    assign_alternating(crossings);
  } else if (const auto* ex = std::get_if<ExplicitRule>(&rule)) {
    assign_explicit(crossings, *ex);
  } else {
    const InheritRule& inherit = std::get<InheritRule>(rule);
    if (inherit.previous == nullptr) {
      assign_alternating(crossings);
    } else {
      const std::vector<Crossing>& old = inherit.previous->crossings();
      std::vector<bool> taken(old.size(), false);
      std::vector<std::size_t> fresh;
      for (std::size_t i = 0; i < crossings.size(); ++i) {
        Crossing& x = crossings[i];
        const Match m = match_one(x, old, c.size(), inherit.tolerance, taken);
        x.first_over = m.index < 0 || (old[static_cast<std::size_t>(m.index)].first_over != m.swapped);
        if (m.index < 0) fresh.push_back(i);
      }
      settle_fresh_pairs(crossings, fresh, c.size());
    }
  }
  return KnotDiagram(c, std::move(crossings));
}

KnotDiagram::KnotDiagram(ClosedCurve curve, std::vector<Crossing> crossings)
    : curve_(std::move(curve)), crossings_(std::move(crossings)) {
  const std::size_t n = curve_.size();
  if (crossings_.empty()) {
    graph_.free_loop.assign(curve_.points().begin(), curve_.points().end());
    return;
  }
  for (const Crossing& x : crossings_) graph_.add_vertex(x.position);
  const std::vector<Passage> ps = sorted_passages(crossings_);
  const std::size_t m = ps.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Passage& a = ps[k];
    const Passage& b = ps[(k + 1) % m];
    std::vector<Vec2> poly;
    poly.push_back(crossings_[static_cast<std::size_t>(a.crossing)].position);
    // Samples strictly after a.param and up to b.param, walking forward.
    auto first = static_cast<std::size_t>(std::floor(a.param)) + 1;
    const auto last = static_cast<std::size_t>(std::floor(b.param));
    const bool wraps = k + 1 == m;
    std::size_t count = wraps ? (last + n + 1 - first) : (last + 1 - first);
    if (!wraps && last + 1 < first) count = 0;
    std::vector<std::size_t> samples;
    for (std::size_t s = 0; s < count; ++s) {
      samples.push_back((first + s) % n);
      poly.push_back(curve_[first + s]);
    }
    edge_samples_.push_back(std::move(samples));
    poly.push_back(crossings_[static_cast<std::size_t>(b.crossing)].position);
    graph_.add_edge(a.crossing, 2 * a.strand + 1, b.crossing, 2 * b.strand, std::move(poly));
  }
  for (std::size_t i = 0; i < crossings_.size(); ++i) {
    for (int s = 0; s < 4; ++s) {
      const bool strand0 = strand_of(s) == 0;
      graph_.vertices[i].slots[static_cast<std::size_t>(s)].over = strand0 == crossings_[i].first_over;
    }
  }
}

KnotDiagram KnotDiagram::scaled(double factor) const {
  std::vector<Crossing> xs = crossings_;
  for (Crossing& x : xs) x.position = x.position * factor;
  return KnotDiagram(curve_.scaled(factor), std::move(xs));
}

}  // namespace flatknot
