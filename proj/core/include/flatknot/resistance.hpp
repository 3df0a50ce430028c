#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatknot/cycles.hpp"
#include "flatknot/diagram.hpp"

namespace flatknot {

enum class ResistanceFamily { kNone, kRE, kMRE, kGMRE };

std::string to_string(ResistanceFamily f);
ResistanceFamily resistance_family_from_name(const std::string& name);

struct CycleContribution {
  std::size_t id = 0;  // position in the canonical cycle order of the summed set
  std::size_t arcs = 0;
  double area = 0.0;
  bool alternated = false;
  double value = 0.0;
};

struct EnergyBreakdown {
  ResistanceFamily family = ResistanceFamily::kRE;
  std::optional<double> delta;
  double total = 0.0;
  std::vector<CycleContribution> per_cycle;
};

// Alternated cycles with area below this are treated as degenerate.
inline constexpr double kSingularArea = 1e-14;

// Sum of 1/A over alternated cycles. Throws Error(kSingular) on a
// degenerate alternated cycle.
EnergyBreakdown resistance_energy(const KnotDiagram& d, std::uint64_t hard_limit = 10'000'000);

// Sum of 1/A - 1/delta over alternated cycles of area < delta, found by
// searching only the closures of connected groups of faces with area < delta.
EnergyBreakdown mre(const KnotDiagram& d, double delta);
// Same value by filtering a full enumeration; slow, kept as a cross-check.
EnergyBreakdown mre_full_enumeration(const KnotDiagram& d, double delta);

struct GmreOptions {
  // Also require alternation for the 4-arc family.
  bool alternated_four_arc = false;
};

// The watched set: delta-critical alternated cycles with at most 3 arcs and
// delta-critical 4-arc cycles.
std::vector<DiagramCycle> gamma_delta(const KnotDiagram& d, double delta, const GmreOptions& options = {});
EnergyBreakdown gmre(const KnotDiagram& d, double delta, const GmreOptions& options = {});

// n^4/24 + n^3/6 + n^2/2 + n.
double gamma_bound(std::size_t crossings);

// The cycles a family sums over (empty for kNone).
std::vector<DiagramCycle> watched_cycles(const KnotDiagram& d, ResistanceFamily family, double delta);

// Dispatches on the family; kNone gives an empty breakdown.
EnergyBreakdown resistance(const KnotDiagram& d, ResistanceFamily family, double delta);

// Faces of area < delta grouped by shared edges; each group is returned as an
// edge mask of its closure.
std::vector<std::vector<bool>> low_area_domains(const CycleGraph& g, double delta);

}  // namespace flatknot
