#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "flatknot/cycles.hpp"
#include "flatknot/diagram.hpp"
#include "flatknot/flow.hpp"
#include "flatknot/resistance.hpp"
#include "flatknot/uniformization.hpp"

namespace flatknot::io {

using Json = nlohmann::json;

// Format errors throw Error(kFormat) naming the offending key.

// {"points": [[x, y], ...], "length": L}
Json to_json(const ClosedCurve& c);
ClosedCurve curve_from_json(const Json& j);

// {"alpha": [...], "base": [x, y], "step": h}; step defaults to 2 pi / N.
Json to_json(const GaussRep& g);
GaussRep gauss_from_json(const Json& j);

// {"curve": ..., "crossings": [{"pos": [x, y], "over": i, "under": j}]};
// over/under are the segment indices of the two passages.
Json to_json(const KnotDiagram& d);
// Accepts a diagram document, or a bare curve (alternating types).
KnotDiagram diagram_from_json(const Json& j);

// {"counts_by_arcs": {"1": 6, ...}, "alternated": k, "total": m}
Json to_json(const CycleCensus& c);

Json to_json(const EnergyBreakdown& b);

struct EnergyReport {
  std::string functional;
  double value = 0.0;
  double gradient_norm = 0.0;
  ELResidualReport el;
};
Json to_json(const EnergyReport& r);

Json to_json(const FlowConfig& cfg);
// Missing keys keep their defaults.
FlowConfig flow_config_from_json(const Json& j);

Json to_json(const FlowRecord& r);
Json to_json(const FlowEvent& e);

Json read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const Json& j);

}  // namespace flatknot::io
