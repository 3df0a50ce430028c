#include "flatknot/svg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatknot/errors.hpp"

namespace flatknot {

namespace {

struct Viewport {
  double scale = 1.0;
  Vec2 lo;
  double height = 0.0;
  double margin = 0.0;
  double extra_x = 0.0, extra_y = 0.0;

  Vec2 map(Vec2 p) const {
    return {margin + extra_x + (p.x - lo.x) * scale, height - margin - extra_y - (p.y - lo.y) * scale};
  }
};

Viewport fit(std::span<const Vec2> pts, const RenderSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0 || !(spec.margin >= 0.0) ||
      2.0 * spec.margin >= std::min(spec.width, spec.height)) {
    throw Error(ErrorCode::kDomain, "render size too small for the margin");
  }
  Vec2 lo{pts[0]}, hi{pts[0]};
  for (const Vec2& p : pts) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
  const double w = spec.width - 2.0 * spec.margin, h = spec.height - 2.0 * spec.margin;
  const double span_x = std::max(hi.x - lo.x, 1e-12), span_y = std::max(hi.y - lo.y, 1e-12);
  Viewport v;
  v.scale = std::min(w / span_x, h / span_y);
  v.lo = lo;
  v.height = spec.height;
  v.margin = spec.margin;
  v.extra_x = 0.5 * (w - span_x * v.scale);
  v.extra_y = 0.5 * (h - span_y * v.scale);
  return v;
}

void polyline_path(std::ostream& out, const Viewport& v, std::span<const Vec2> pts, bool closed) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec2 q = v.map(pts[i]);
    out << (i == 0 ? "M" : " L") << q.x << ',' << q.y;
  }
  if (closed) out << " Z";
}

void header(std::ostream& out, const RenderSpec& spec) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width << "\" height=\""
      << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n"
      << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void footer(std::ostream& out, const RenderSpec& spec) {
  if (!spec.caption.empty()) {
    out << "  <text x=\"" << spec.margin << "\" y=\"" << spec.height - 0.3 * spec.margin
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << xml_escape(spec.caption) << "</text>\n";
  }
  out << "</svg>\n";
}

// Samples of the curve within `radius` (arclength) of parameter t.
std::vector<Vec2> local_piece(const ClosedCurve& c, double t, double radius) {
  const std::size_t n = c.size();
  const double h = c.length() / static_cast<double>(n);
  const long reach = std::max(1L, static_cast<long>(std::ceil(radius / h)));
  const long base = static_cast<long>(std::floor(t));
  const double frac = t - static_cast<double>(base);
  auto at = [&](long k) { return c[static_cast<std::size_t>(((k % static_cast<long>(n)) + static_cast<long>(n)) % static_cast<long>(n))]; };
  std::vector<Vec2> pts;
  for (long k = base - reach + 1; k <= base; ++k) pts.push_back(at(k));
  pts.push_back(at(base) + (at(base + 1) - at(base)) * frac);
  for (long k = base + 1; k <= base + reach; ++k) pts.push_back(at(k));
  return pts;
}

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string render_svg(const KnotDiagram& d, const RenderSpec& spec, const std::vector<DiagramCycle>& cycles) {
  const ClosedCurve& c = d.curve();
  const Viewport v = fit(c.points(), spec);
  std::ostringstream out;
  out.precision(6);
  header(out, spec);

  if (spec.show_cycles) {
    static constexpr const char* kPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628"};
    std::size_t k = 0;
    for (const DiagramCycle& cy : cycles) {
      if (cy.polyline.size() < 3) continue;
      out << "  <path fill=\"" << kPalette[k++ % 6] << "\" fill-opacity=\"0.25\" stroke=\"none\" d=\"";
      polyline_path(out, v, cy.polyline, true);
      out << "\"/>\n";
    }
  }

  out << "  <path fill=\"none\" stroke=\"black\" stroke-width=\"" << spec.stroke
      << "\" stroke-linejoin=\"round\" d=\"";
  polyline_path(out, v, c.points(), true);
  out << "\"/>\n";

  if (spec.show_crossings && d.crossing_count() > 0) {
    // Gap radius: a few stroke widths, in curve units.
    const double radius = 4.0 * spec.stroke / v.scale;
    out << "  <g fill=\"none\" stroke-linecap=\"round\" stroke-linejoin=\"round\">\n";
    for (const Crossing& x : d.crossings()) {
      const std::vector<Vec2> piece = local_piece(c, x.over_param(), radius);
      for (int pass = 0; pass < 2; ++pass) {
        out << "    <path stroke=\"" << (pass == 0 ? "white" : "black") << "\" stroke-width=\""
            << (pass == 0 ? 4.0 * spec.stroke : spec.stroke) << "\" d=\"";
        polyline_path(out, v, piece, false);
        out << "\"/>\n";
      }
    }
    out << "  </g>\n";
  }
  footer(out, spec);
  return out.str();
}

std::string render_svg(const ClosedCurve& c, const RenderSpec& spec) {
  RenderSpec plain = spec;
  plain.show_crossings = false;
  plain.show_cycles = false;
  return render_svg(KnotDiagram(c, {}), plain);
}

}  // namespace flatknot
