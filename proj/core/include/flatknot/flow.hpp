#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatknot/diagram.hpp"
#include "flatknot/resistance.hpp"
#include "flatknot/uniformization.hpp"

namespace flatknot {

enum class Preconditioner {
  kNone,     // plain L2 steepest descent
  kSobolev,  // (1 - D2)^{-1} smoothing, D2 the periodic second difference
};

struct FlowConfig {
  std::string functional = "x^2";
  ResistanceFamily resistance = ResistanceFamily::kMRE;
  double delta = 0.5;
  double step0 = 1.0;
  int max_iters = 2000;
  double grad_tol = 1e-6;
  double gmre_ceiling = 1e3;
  std::size_t samples = 256;
  double fd_step = 1e-6;
  // Largest accepted point displacement per step, in units of the sample spacing.
  double max_displacement = 0.25;
  Preconditioner preconditioner = Preconditioner::kSobolev;
  // Passage-parameter tolerance (samples) for carrying crossing types forward.
  double inherit_tolerance = 3.0;

  // Throws Error(kDomain) on non-positive step0, grad_tol, delta or samples < 16.
  void validate() const;
};

std::string to_string(Preconditioner p);
Preconditioner preconditioner_from_name(const std::string& name);

enum class EventKind { kNone, kR2Appear, kR2Vanish, kR3, kForbidden };
std::string to_string(EventKind k);

struct FlowEvent {
  int iter = 0;
  EventKind kind = EventKind::kNone;
  Vec2 location;
  int crossing_delta = 0;
  std::string detail;
};

enum class Termination { kConverged, kMaxIters, kForbiddenEvent, kSingular, kStalled };
std::string to_string(Termination t);

struct FlowRecord {
  int iter = 0;
  double U = 0.0;
  double R = 0.0;
  double total = 0.0;
  double gmre = 0.0;  // +inf when a watched cycle is degenerate
  std::size_t crossings = 0;
  double grad_norm = 0.0;  // L2 norm of the closure-projected gradient
  double step = 0.0;       // accepted step (0 for the initial record)
  int whitney = 0;
};

struct FlowTrace {
  std::vector<FlowRecord> records;
  std::vector<FlowEvent> events;
  std::optional<ClosedCurve> final_curve;
  std::optional<KnotDiagram> final_diagram;
  Termination terminated = Termination::kMaxIters;
  std::string message;

  double max_gmre() const;
  bool has_forbidden() const;
};

struct EnergyPair {
  double U = 0.0;
  double R = 0.0;
};

// U on the Gauss representation of c, R on its diagram (alternating types
// unless a typed diagram is given).
EnergyPair total_energy(const ClosedCurve& c, const FlowConfig& cfg);
EnergyPair total_energy(const KnotDiagram& d, const FlowConfig& cfg);

struct StepResult {
  ClosedCurve curve;
  double step = 0.0;
  double energy_before = 0.0;
  double energy_after = 0.0;
};

// One line-searched descent step from c (resampled to cfg.samples and
// rescaled to length 2 pi first). Throws Error(kStalled) on step underflow.
StepResult flow_step(const KnotDiagram& d, const FlowConfig& cfg, double step);
StepResult flow_step(const ClosedCurve& c, const FlowConfig& cfg, double step);

using FlowObserver = std::function<void(const FlowRecord&, const KnotDiagram&)>;

FlowTrace relax(const KnotDiagram& d0, const FlowConfig& cfg, const FlowObserver& observer = {});
FlowTrace relax(const ClosedCurve& c0, const FlowConfig& cfg, const FlowObserver& observer = {});

// Compares consecutive diagrams whose crossings moved by at most `radius`.
// Crossings are matched by position; unmatched pairs forming a bigon give R2
// events, triangles whose passage order flipped give R3, anything else is
// forbidden.
std::vector<FlowEvent> classify_events(const KnotDiagram& before, const KnotDiagram& after, double radius);
// The forbidden event if any, else the first event, else kind kNone.
FlowEvent classify_event(const KnotDiagram& before, const KnotDiagram& after, double radius);

// Crossing types of `old_diagram` carried to the crossings of `c` by nearest
// position; the over passage is the one whose tangent best matches the old
// over strand. Unmatched crossings take the earlier passage over.
KnotDiagram transfer_types(const KnotDiagram& old_diagram, const ClosedCurve& c);

}  // namespace flatknot
