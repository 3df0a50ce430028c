#pragma once

#include <string>
#include <vector>

#include "flatknot/cycles.hpp"
#include "flatknot/diagram.hpp"

namespace flatknot {

struct RenderSpec {
  int width = 480;
  int height = 480;
  double stroke = 2.0;  // pixels
  double margin = 24.0;
  bool show_crossings = true;  // over strand drawn on top with a white halo
  bool show_cycles = false;    // fill the given cycles translucently
  std::string caption;         // escaped; omitted when empty
};

// Standalone SVG document. The curve is fitted to the viewport keeping
// its aspect ratio; y points up.
std::string render_svg(const KnotDiagram& d, const RenderSpec& spec = {},
                       const std::vector<DiagramCycle>& cycles = {});
std::string render_svg(const ClosedCurve& c, const RenderSpec& spec = {});

std::string xml_escape(const std::string& s);

}  // namespace flatknot
