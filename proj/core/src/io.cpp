#include "flatknot/io.hpp"

#include <cmath>
#include <fstream>

#include "flatknot/errors.hpp"

namespace flatknot::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::kFormat, "bad JSON: " + what); }

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
  return j.at(key);
}

Vec2 point_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    bad(std::string("'") + what + "' must be [x, y]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json point_to(Vec2 p) { return Json::array({p.x, p.y}); }

// Non-finite values are written as null.
Json number(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

}  // namespace

Json to_json(const ClosedCurve& c) {
  Json pts = Json::array();
  for (const Vec2& p : c.points()) pts.push_back(point_to(p));
  return {{"points", pts}, {"length", c.length()}};
}

ClosedCurve curve_from_json(const Json& j) {
  const Json& pts = require(j, "points");
  if (!pts.is_array()) bad("'points' must be an array");
  std::vector<Vec2> p;
  p.reserve(pts.size());
  for (const Json& q : pts) p.push_back(point_from(q, "points[i]"));
  return ClosedCurve(std::move(p));
}

Json to_json(const GaussRep& g) {
  return {{"alpha", g.alpha}, {"base", point_to(g.base)}, {"step", g.step}};
}

GaussRep gauss_from_json(const Json& j) {
  const Json& a = require(j, "alpha");
  if (!a.is_array() || a.empty()) bad("'alpha' must be a non-empty array");
  GaussRep g;
  for (const Json& x : a) {
    if (!x.is_number()) bad("'alpha' entries must be numbers");
    g.alpha.push_back(x.get<double>());
  }
  g.base = point_from(require(j, "base"), "base");
  g.step = j.contains("step") ? j.at("step").get<double>() : kTwoPi / static_cast<double>(g.alpha.size());
  if (!(g.step > 0.0)) bad("'step' must be positive");
  return g;
}

Json to_json(const KnotDiagram& d) {
  Json xs = Json::array();
  for (const Crossing& x : d.crossings()) {
    const int over = static_cast<int>(x.over_param());
    const int under = static_cast<int>(x.under_param());
    xs.push_back({{"pos", point_to(x.position)}, {"over", over}, {"under", under}});
  }
  return {{"curve", to_json(d.curve())}, {"crossings", xs}};
}

KnotDiagram diagram_from_json(const Json& j) {
  if (j.is_object() && j.contains("points")) return detect_crossings(curve_from_json(j));
  const ClosedCurve c = curve_from_json(require(j, "curve"));
  if (!j.contains("crossings")) return detect_crossings(c);
  const Json& xs = j.at("crossings");
  if (!xs.is_array()) bad("'crossings' must be an array");
  ExplicitRule rule;
  for (const Json& x : xs) {
    CrossingType t;
    t.position = point_from(require(x, "pos"), "pos");
    t.over_segment = require(x, "over").get<int>();
    t.under_segment = require(x, "under").get<int>();
    rule.types.push_back(t);
  }
  KnotDiagram d = detect_crossings(c, rule);
  if (d.crossing_count() != rule.types.size()) {
    bad("diagram lists " + std::to_string(rule.types.size()) + " crossings but the curve has " +
        std::to_string(d.crossing_count()));
  }
  return d;
}

Json to_json(const CycleCensus& c) {
  Json counts = Json::object();
  for (const auto& [arcs, n] : c.counts_by_arcs) counts[std::to_string(arcs)] = n;
  return {{"counts_by_arcs", counts}, {"alternated", c.alternated}, {"total", c.total}};
}

Json to_json(const EnergyBreakdown& b) {
  Json per = Json::array();
  for (const CycleContribution& c : b.per_cycle) {
    per.push_back({{"id", c.id}, {"arcs", c.arcs}, {"area", c.area}, {"alternated", c.alternated}, {"value", c.value}});
  }
  Json j = {{"family", to_string(b.family)}, {"total", b.total}, {"per_cycle", per}};
  j["delta"] = b.delta ? Json(*b.delta) : Json(nullptr);
  return j;
}

Json to_json(const EnergyReport& r) {
  return {{"functional", r.functional},
          {"value", r.value},
          {"gradient_norm", r.gradient_norm},
          {"el", {{"c1", r.el.c1}, {"c2", r.el.c2}, {"rms", r.el.rms_residual}}}};
}

Json to_json(const FlowConfig& cfg) {
  return {{"functional", cfg.functional},
          {"resistance", to_string(cfg.resistance)},
          {"delta", cfg.delta},
          {"step0", cfg.step0},
          {"max_iters", cfg.max_iters},
          {"grad_tol", cfg.grad_tol},
          {"gmre_ceiling", cfg.gmre_ceiling},
          {"samples", cfg.samples},
          {"fd_step", cfg.fd_step},
          {"max_displacement", cfg.max_displacement},
          {"preconditioner", to_string(cfg.preconditioner)},
          {"inherit_tolerance", cfg.inherit_tolerance}};
}

FlowConfig flow_config_from_json(const Json& j) {
  if (!j.is_object()) bad("config must be an object");
  FlowConfig cfg;
  try {
    if (j.contains("functional")) cfg.functional = j.at("functional").get<std::string>();
    if (j.contains("resistance")) cfg.resistance = resistance_family_from_name(j.at("resistance").get<std::string>());
    if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
    if (j.contains("step0")) cfg.step0 = j.at("step0").get<double>();
    if (j.contains("max_iters")) cfg.max_iters = j.at("max_iters").get<int>();
    if (j.contains("grad_tol")) cfg.grad_tol = j.at("grad_tol").get<double>();
    if (j.contains("gmre_ceiling")) cfg.gmre_ceiling = j.at("gmre_ceiling").get<double>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<std::size_t>();
    if (j.contains("fd_step")) cfg.fd_step = j.at("fd_step").get<double>();
    if (j.contains("max_displacement")) cfg.max_displacement = j.at("max_displacement").get<double>();
    if (j.contains("preconditioner")) cfg.preconditioner = preconditioner_from_name(j.at("preconditioner").get<std::string>());
    if (j.contains("inherit_tolerance")) cfg.inherit_tolerance = j.at("inherit_tolerance").get<double>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("config: ") + e.what());
  }
  EnergyFunctional::from_name(cfg.functional);
  cfg.validate();
  return cfg;
}

Json to_json(const FlowRecord& r) {
  return {{"iter", r.iter},     {"U", r.U},
          {"R", r.R},           {"gmre", number(r.gmre)},
          {"crossings", r.crossings}, {"total", r.total},
          {"grad_norm", r.grad_norm}, {"step", r.step},
          {"whitney", r.whitney}};
}

Json to_json(const FlowEvent& e) {
  Json j = {{"event", to_string(e.kind)},
            {"iter", e.iter},
            {"location", point_to(e.location)},
            {"crossing_delta", e.crossing_delta}};
  if (!e.detail.empty()) j["detail"] = e.detail;
  return j;
}

Json read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kFormat, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kFormat, path.string() + ": " + e.what());
  }
}

void write_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kFormat, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace flatknot::io
