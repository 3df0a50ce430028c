#include "flatknot/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "flatknot/errors.hpp"

namespace flatknot {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0)) throw Error(ErrorCode::kDomain, "delta must be positive");
}

void check_regular(const DiagramCycle& cy) {
  if (cy.alternated && !(cy.area >= kSingularArea)) {
    std::ostringstream msg;
    msg << "singular diagram: alternated cycle of area " << cy.area;
    throw Error(ErrorCode::kSingular, msg.str());
  }
}

EnergyBreakdown sum_over(const std::vector<DiagramCycle>& cycles, ResistanceFamily family,
                         std::optional<double> delta) {
  EnergyBreakdown b;
  b.family = family;
  b.delta = delta;
  const double offset = delta ? 1.0 / *delta : 0.0;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const DiagramCycle& cy = cycles[i];
    check_regular(cy);
    CycleContribution c;
    c.id = i;
    c.arcs = cy.arc_count();
    c.area = cy.area;
    c.alternated = cy.alternated;
    c.value = 1.0 / cy.area - offset;
    b.total += c.value;
    b.per_cycle.push_back(c);
  }
  return b;
}

int find_root(std::vector<int>& parent, int x) {
  while (parent[static_cast<std::size_t>(x)] != x) {
    parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    x = parent[static_cast<std::size_t>(x)];
  }
  return x;
}

// Cycles inside low-area domains passing `keep`, merged into canonical order.
template <class Keep>
std::vector<DiagramCycle> search_low_area(const KnotDiagram& d, double delta, const CycleOptions& base, Keep keep) {
  const CycleGraph& g = d.graph();
  std::vector<DiagramCycle> found;
  if (g.vertices.empty()) {
    for (DiagramCycle& cy : enumerate_cycles(g, base)) {
      if (cy.area < delta && keep(cy)) found.push_back(std::move(cy));
    }
    return found;
  }
  std::set<std::vector<int>> seen;
  for (const std::vector<bool>& mask : low_area_domains(g, delta)) {
    CycleOptions opt = base;
    opt.area_cap = delta;
    opt.edge_mask = mask;
    for (DiagramCycle& cy : enumerate_cycles(g, opt)) {
      if (keep(cy) && seen.insert(cy.key()).second) found.push_back(std::move(cy));
    }
  }
  std::sort(found.begin(), found.end(), [](const DiagramCycle& a, const DiagramCycle& b) {
    return a.arc_count() != b.arc_count() ? a.arc_count() < b.arc_count() : a.key() < b.key();
  });
  return found;
}

}  // namespace

std::string to_string(ResistanceFamily f) {
  switch (f) {
    case ResistanceFamily::kNone: return "none";
    case ResistanceFamily::kRE: return "RE";
    case ResistanceFamily::kMRE: return "MRE";
    case ResistanceFamily::kGMRE: return "GMRE";
  }
  return "?";
}

ResistanceFamily resistance_family_from_name(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  if (s == "NONE") return ResistanceFamily::kNone;
  if (s == "RE") return ResistanceFamily::kRE;
  if (s == "MRE") return ResistanceFamily::kMRE;
  if (s == "GMRE") return ResistanceFamily::kGMRE;
  throw Error(ErrorCode::kFormat, "unknown resistance family '" + name + "'");
}

std::vector<std::vector<bool>> low_area_domains(const CycleGraph& g, double delta) {
  const std::vector<Face> fs = faces(g);
  std::vector<int> low;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].signed_area > 0.0 && fs[i].signed_area < delta) low.push_back(static_cast<int>(i));
  }
  // Union faces sharing an edge.
  std::vector<int> parent(low.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> owner(g.edges.size(), -1);
  for (std::size_t k = 0; k < low.size(); ++k) {
    for (const CycleStep& st : fs[static_cast<std::size_t>(low[k])].boundary) {
      int& o = owner[static_cast<std::size_t>(st.edge)];
      if (o < 0) {
        o = static_cast<int>(k);
      } else {
        parent[static_cast<std::size_t>(find_root(parent, o))] = find_root(parent, static_cast<int>(k));
      }
    }
  }
  std::vector<std::vector<bool>> masks;
  std::vector<int> slot_of_root(low.size(), -1);
  for (std::size_t k = 0; k < low.size(); ++k) {
    const int r = find_root(parent, static_cast<int>(k));
    int& m = slot_of_root[static_cast<std::size_t>(r)];
    if (m < 0) {
      m = static_cast<int>(masks.size());
      masks.emplace_back(g.edges.size(), false);
    }
    for (const CycleStep& st : fs[static_cast<std::size_t>(low[k])].boundary) {
      masks[static_cast<std::size_t>(m)][static_cast<std::size_t>(st.edge)] = true;
    }
  }
  return masks;
}

EnergyBreakdown resistance_energy(const KnotDiagram& d, std::uint64_t hard_limit) {
  CycleOptions opt;
  opt.alternated_only = true;
  opt.hard_limit = hard_limit;
  return sum_over(enumerate_cycles(d, opt), ResistanceFamily::kRE, std::nullopt);
}

EnergyBreakdown mre(const KnotDiagram& d, double delta) {
  check_delta(delta);
  CycleOptions opt;
  opt.alternated_only = true;
  return sum_over(search_low_area(d, delta, opt, [](const DiagramCycle&) { return true; }), ResistanceFamily::kMRE,
                  delta);
}

EnergyBreakdown mre_full_enumeration(const KnotDiagram& d, double delta) {
  check_delta(delta);
  CycleOptions opt;
  opt.alternated_only = true;
  opt.area_cap = delta;
  return sum_over(enumerate_cycles(d, opt), ResistanceFamily::kMRE, delta);
}

std::vector<DiagramCycle> gamma_delta(const KnotDiagram& d, double delta, const GmreOptions& options) {
  check_delta(delta);
  CycleOptions opt;
  opt.arc_cap = 4;
  return search_low_area(d, delta, opt, [&](const DiagramCycle& cy) {
    if (cy.arc_count() <= 3) return cy.alternated;
    return !options.alternated_four_arc || cy.alternated;
  });
}

EnergyBreakdown gmre(const KnotDiagram& d, double delta, const GmreOptions& options) {
  const std::vector<DiagramCycle> cycles = gamma_delta(d, delta, options);
  // Non-alternated 4-arc cycles may be degenerate without being singular for
  // RE; they still carry 1/A.
  EnergyBreakdown b;
  b.family = ResistanceFamily::kGMRE;
  b.delta = delta;
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    const DiagramCycle& cy = cycles[i];
    if (!(cy.area >= kSingularArea)) {
      std::ostringstream msg;
      msg << "singular diagram: watched cycle of area " << cy.area;
      throw Error(ErrorCode::kSingular, msg.str());
    }
    CycleContribution c{i, cy.arc_count(), cy.area, cy.alternated, 1.0 / cy.area - 1.0 / delta};
    b.total += c.value;
    b.per_cycle.push_back(c);
  }
  return b;
}

double gamma_bound(std::size_t crossings) {
  const double n = static_cast<double>(crossings);
  return n * n * n * n / 24.0 + n * n * n / 6.0 + n * n / 2.0 + n;
}

std::vector<DiagramCycle> watched_cycles(const KnotDiagram& d, ResistanceFamily family, double delta) {
  CycleOptions opt;
  opt.alternated_only = true;
  switch (family) {
    case ResistanceFamily::kNone: return {};
    case ResistanceFamily::kRE: return enumerate_cycles(d, opt);
    case ResistanceFamily::kMRE:
      check_delta(delta);
      return search_low_area(d, delta, opt, [](const DiagramCycle&) { return true; });
    case ResistanceFamily::kGMRE: return gamma_delta(d, delta);
  }
  throw Error(ErrorCode::kDomain, "unknown resistance family");
}

EnergyBreakdown resistance(const KnotDiagram& d, ResistanceFamily family, double delta) {
  switch (family) {
    case ResistanceFamily::kNone: {
      EnergyBreakdown b;
      b.family = ResistanceFamily::kNone;
      return b;
    }
    case ResistanceFamily::kRE: return resistance_energy(d);
    case ResistanceFamily::kMRE: return mre(d, delta);
    case ResistanceFamily::kGMRE: return gmre(d, delta);
  }
  throw Error(ErrorCode::kDomain, "unknown resistance family");
}

}  // namespace flatknot
