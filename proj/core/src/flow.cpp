#include "flatknot/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <fftw3.h>

#include "flatknot/errors.hpp"
#include "flatknot/parallel.hpp"

namespace flatknot {

namespace {

constexpr double kArmijo = 1e-4;
constexpr double kMinStep = 1e-12;

// (1 + mu_k)^{-1} in Fourier space, mu_k the symbol of the periodic second
// difference -(a[i+1] - 2 a[i] + a[i-1]) / h^2.
class SobolevSmoother {
 public:
  SobolevSmoother(std::size_t n, double h)
      : n_(n), real_(fftw_alloc_real(n)), spectrum_(fftw_alloc_complex(n / 2 + 1)), inv_symbol_(n / 2 + 1) {
    const int size = static_cast<int>(n);
    forward_ = fftw_plan_dft_r2c_1d(size, real_, spectrum_, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_c2r_1d(size, spectrum_, real_, FFTW_ESTIMATE);
    for (std::size_t k = 0; k <= n / 2; ++k) {
      const double s = 2.0 * std::sin(kPi * static_cast<double>(k) / static_cast<double>(n)) / h;
      inv_symbol_[k] = 1.0 / (1.0 + s * s);
    }
  }
  ~SobolevSmoother() {
    fftw_destroy_plan(forward_);
    fftw_destroy_plan(backward_);
    fftw_free(real_);
    fftw_free(spectrum_);
  }
  SobolevSmoother(const SobolevSmoother&) = delete;
  SobolevSmoother& operator=(const SobolevSmoother&) = delete;

  std::vector<double> apply(const std::vector<double>& v) const {
    std::copy(v.begin(), v.end(), real_);
    fftw_execute(forward_);
    for (std::size_t k = 0; k <= n_ / 2; ++k) {
      const double scale = inv_symbol_[k] / static_cast<double>(n_);
      spectrum_[k][0] *= scale;
      spectrum_[k][1] *= scale;
    }
    fftw_execute(backward_);
    return std::vector<double>(real_, real_ + n_);
  }

 private:
  std::size_t n_;
  double* real_;
  fftw_complex* spectrum_;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
  std::vector<double> inv_symbol_;
};

double dot_product(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Vec2> tangents_of(const std::vector<double>& alpha) {
  std::vector<Vec2> t(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) t[i] = Vec2{std::cos(alpha[i]), std::sin(alpha[i])};
  return t;
}

// Polygon of the tangent field: trapezoid integration, linear drift removal,
// rescaling to length 2 pi and translation of the centroid to `center`.
std::vector<Vec2> realize(const std::vector<Vec2>& t, double h, Vec2 center) {
  const std::size_t n = t.size();
  std::vector<Vec2> p(n);
  Vec2 cur;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = cur;
    cur += (t[i] + t[(i + 1) % n]) * (0.5 * h);
  }
  p = close_with_linear_correction(std::move(p), cur);
  const double scale = kTwoPi / closed_length(p);
  const Vec2 c = centroid(p);
  for (Vec2& q : p) q = center + (q - c) * scale;
  return p;
}

// Newton iterations along -sin(alpha), cos(alpha) until both closure sums vanish.
void close_alpha(std::vector<double>& alpha, double h) {
  for (int it = 0; it < 12; ++it) {
    double c = 0.0, s = 0.0, ss = 0.0, sc = 0.0, cc = 0.0;
    for (double a : alpha) {
      const double ca = std::cos(a), sa = std::sin(a);
      c += ca;
      s += sa;
      ss += sa * sa;
      sc += sa * ca;
      cc += ca * ca;
    }
    if (std::hypot(c, s) * h < 1e-14) return;
    const double det = ss * cc - sc * sc;
    if (std::abs(det) < 1e-300) return;
    const double a = (-c * cc + sc * -s) / det;
    const double b = (ss * -s + sc * -c) / det;
    for (double& x : alpha) x += -a * std::sin(x) + b * std::cos(x);
  }
}

double max_displacement(const std::vector<Vec2>& a, std::span<const Vec2> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, distance(a[i], b[i]));
  return m;
}

// Resistance of a fixed set of cycles as a function of the sample positions:
// crossings are recomputed from their two segment lines, cycle polygons from
// the stored sample indices.
class FrozenResistance {
 public:
  FrozenResistance(const KnotDiagram& d, const std::vector<DiagramCycle>& cycles, double offset)
      : offset_(offset) {
    for (const Crossing& x : d.crossings()) segments_.emplace_back(x.first_segment(), x.second_segment());
    const CycleGraph& g = d.graph();
    for (const DiagramCycle& cy : cycles) {
      std::vector<Node> poly;
      if (cy.steps.empty()) {
        for (std::size_t i = 0; i < d.curve().size(); ++i) poly.push_back(Node{false, i});
      }
      for (const CycleStep& st : cy.steps) {
        const GraphEdge& e = g.edges[static_cast<std::size_t>(st.edge)];
        const std::vector<std::size_t>& samples = d.edge_samples()[static_cast<std::size_t>(st.edge)];
        if (st.forward) {
          poly.push_back(Node{true, static_cast<std::size_t>(e.from)});
          for (std::size_t s : samples) poly.push_back(Node{false, s});
        } else {
          poly.push_back(Node{true, static_cast<std::size_t>(e.to)});
          for (auto it = samples.rbegin(); it != samples.rend(); ++it) poly.push_back(Node{false, *it});
        }
      }
      cycles_.push_back(std::move(poly));
    }
  }

  bool empty() const { return cycles_.empty(); }

  double operator()(const std::vector<Vec2>& p) const {
    const std::size_t n = p.size();
    std::vector<Vec2> xs(segments_.size());
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const auto [i, j] = segments_[k];
      const Vec2 a0 = p[static_cast<std::size_t>(i) % n], a1 = p[static_cast<std::size_t>(i + 1) % n];
      const Vec2 b0 = p[static_cast<std::size_t>(j) % n], b1 = p[static_cast<std::size_t>(j + 1) % n];
      const Vec2 da = a1 - a0, db = b1 - b0;
      const double denom = cross(da, db);
      xs[k] = denom == 0.0 ? a0 : a0 + da * (cross(b0 - a0, db) / denom);
    }
    double total = 0.0;
    std::vector<Vec2> poly;
    for (const std::vector<Node>& cy : cycles_) {
      poly.clear();
      for (const Node& nd : cy) poly.push_back(nd.crossing ? xs[nd.index] : p[nd.index]);
      total += 1.0 / std::abs(signed_area(poly)) - offset_;
    }
    return total;
  }

 private:
  struct Node {
    bool crossing;
    std::size_t index;
  };
  std::vector<std::pair<int, int>> segments_;
  std::vector<std::vector<Node>> cycles_;
  double offset_ = 0.0;
};

double safe_gmre(const KnotDiagram& d, double delta) {
  try {
    return gmre(d, delta).total;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kSingular) return std::numeric_limits<double>::infinity();
    throw;
  }
}

class FlowState {
 public:
  FlowState(const KnotDiagram& d0, const FlowConfig& cfg)
      : cfg_(cfg), functional_(EnergyFunctional::from_name(cfg.functional)) {
    cfg.validate();
    const std::size_t n = cfg.samples;
    const ClosedCurve resampled = resample_arclength(d0.curve().points(), n);
    const GaussRep g = gauss_from_curve(resampled);
    alpha_ = g.alpha;
    defect_ = kTwoPi * std::round(g.lift_defect() / kTwoPi);
    h_ = kTwoPi / static_cast<double>(n);
    center_ = centroid(resampled.points());
    smoother_.emplace(n, h_);
    close_alpha(alpha_, h_);
    points_ = realize(tangents_of(alpha_), h_, center_);
    diagram_.emplace(transfer_types(d0, ClosedCurve(points_)));
    evaluate_current();
  }

  const KnotDiagram& diagram() const { return *diagram_; }
  double U() const { return u_; }
  double R() const { return r_; }
  double energy() const { return u_ + r_; }
  std::size_t size() const { return alpha_.size(); }
  double spacing() const { return h_; }

  GaussRep gauss() const {
    GaussRep g;
    g.alpha = alpha_;
    g.step = h_;
    g.base = points_.front();
    g.end_value = alpha_.front() + defect_;
    return g;
  }

  // L2 gradient of U + R with respect to the alpha samples.
  std::vector<double> gradient() const {
    std::vector<double> grad = uf_gradient_raw(gauss(), functional_);
    if (cfg_.resistance == ResistanceFamily::kNone) return grad;
    const std::vector<DiagramCycle> cycles = watched_cycles(*diagram_, cfg_.resistance, cfg_.delta);
    if (cycles.empty()) return grad;
    const double offset = cfg_.resistance == ResistanceFamily::kRE ? 0.0 : 1.0 / cfg_.delta;
    const FrozenResistance frozen(*diagram_, cycles, offset);
    const double eps = cfg_.fd_step;
    const std::vector<Vec2> base = tangents_of(alpha_);
    parallel_for(alpha_.size(), [&](std::size_t begin, std::size_t end) {
      std::vector<Vec2> t = base;
      for (std::size_t j = begin; j < end; ++j) {
        t[j] = Vec2{std::cos(alpha_[j] + eps), std::sin(alpha_[j] + eps)};
        const double up = frozen(realize(t, h_, center_));
        t[j] = Vec2{std::cos(alpha_[j] - eps), std::sin(alpha_[j] - eps)};
        const double down = frozen(realize(t, h_, center_));
        t[j] = base[j];
        grad[j] += (up - down) / (2.0 * eps) / h_;
      }
    });
    return grad;
  }

  // Descent direction: preconditioned gradient with the closure
  // differentials removed in the preconditioner's metric.
  std::vector<double> direction(const std::vector<double>& grad) const {
    const std::size_t n = alpha_.size();
    std::vector<double> c(n), s(n);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = std::cos(alpha_[i]);
      s[i] = std::sin(alpha_[i]);
    }
    auto smooth = [&](const std::vector<double>& v) {
      return cfg_.preconditioner == Preconditioner::kSobolev ? smoother_->apply(v) : v;
    };
    const std::vector<double> v = smooth(grad), mc = smooth(c), ms = smooth(s);
    const double g11 = dot_product(c, mc), g12 = dot_product(c, ms);
    const double g21 = dot_product(s, mc), g22 = dot_product(s, ms);
    const double r1 = dot_product(c, v), r2 = dot_product(s, v);
    const double det = g11 * g22 - g12 * g21;
    double l1 = 0.0, l2 = 0.0;
    if (std::abs(det) > 1e-300) {
      l1 = (r1 * g22 - g12 * r2) / det;
      l2 = (g11 * r2 - g21 * r1) / det;
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -(v[i] - l1 * mc[i] - l2 * ms[i]);
    return d;
  }

  struct Trial {
    std::vector<double> alpha;
    std::vector<Vec2> points;
    std::optional<KnotDiagram> diagram;
    double u = 0.0;
    double r = 0.0;
    double displacement = 0.0;
  };

  enum class TrialStatus { kOk, kTooFar, kRejected };

  TrialStatus try_step(const std::vector<double>& d, double tau, Trial& out) const {
    out.alpha = alpha_;
    for (std::size_t i = 0; i < alpha_.size(); ++i) out.alpha[i] += tau * d[i];
    close_alpha(out.alpha, h_);
    out.points = realize(tangents_of(out.alpha), h_, center_);
    out.displacement = max_displacement(out.points, points_);
    if (out.displacement > cfg_.max_displacement * h_) return TrialStatus::kTooFar;
    try {
      out.diagram.emplace(detect_crossings(ClosedCurve(out.points), InheritRule{&*diagram_, cfg_.inherit_tolerance}));
      GaussRep g = gauss();
      g.alpha = out.alpha;
      g.end_value = out.alpha.front() + defect_;
      out.u = energy_uf(g, functional_);
      out.r = resistance(*out.diagram, cfg_.resistance, cfg_.delta).total;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCodimensionOne || e.code() == ErrorCode::kSingular) return TrialStatus::kRejected;
      throw;
    }
    return std::isfinite(out.u + out.r) ? TrialStatus::kOk : TrialStatus::kRejected;
  }

  void accept(Trial&& t) {
    alpha_ = std::move(t.alpha);
    points_ = std::move(t.points);
    diagram_.emplace(std::move(*t.diagram));
    u_ = t.u;
    r_ = t.r;
  }

  double projected_norm(const std::vector<double>& grad) const {
    const GaussRep g = gauss();
    return l2_norm(g, project_closure(g, grad));
  }

  int whitney() const { return static_cast<int>(std::lround(defect_ / kTwoPi)); }

 private:
  void evaluate_current() {
    u_ = energy_uf(gauss(), functional_);
    r_ = resistance(*diagram_, cfg_.resistance, cfg_.delta).total;
  }

  const FlowConfig& cfg_;
  EnergyFunctional functional_;
  std::vector<double> alpha_;
  std::vector<Vec2> points_;
  double defect_ = 0.0;
  double h_ = 0.0;
  Vec2 center_;
  std::optional<SobolevSmoother> smoother_;
  std::optional<KnotDiagram> diagram_;
  double u_ = 0.0;
  double r_ = 0.0;
};

struct LineSearchOutcome {
  bool accepted = false;
  double step = 0.0;
  double displacement = 0.0;
  double energy_before = 0.0;
};

LineSearchOutcome line_search(FlowState& st, const std::vector<double>& grad, double tau) {
  const std::vector<double> d = st.direction(grad);
  const double slope = st.spacing() * dot_product(grad, d);
  LineSearchOutcome out;
  out.energy_before = st.energy();
  const double e0 = st.energy();
  FlowState::Trial trial;
  while (tau >= kMinStep) {
    const auto status = st.try_step(d, tau, trial);
    if (status == FlowState::TrialStatus::kTooFar) {
      tau *= 0.5;
      continue;
    }
    if (status == FlowState::TrialStatus::kOk) {
      const double e1 = trial.u + trial.r;
      if (e1 <= e0 + kArmijo * tau * slope + 1e-13 * std::abs(e0)) {
        // The quadratic through e0, slope and e1 may place the minimum well
        // inside (0, tau); steps near twice that minimum pass Armijo while
        // leaving stiff modes undamped.
        const double curvature = e1 - e0 - slope * tau;
        if (curvature > 0.0) {
          const double tq = -slope * tau * tau / (2.0 * curvature);
          FlowState::Trial inner;
          if (tq < 0.75 * tau && tq >= kMinStep && st.try_step(d, tq, inner) == FlowState::TrialStatus::kOk &&
              inner.u + inner.r < e1) {
            trial = std::move(inner);
            tau = tq;
          }
        }
        out.accepted = true;
        out.step = tau;
        out.displacement = trial.displacement;
        st.accept(std::move(trial));
        return out;
      }
    }
    tau *= 0.5;
  }
  return out;
}

bool same_order(const Crossing& a, const Crossing& b, std::size_t n) {
  return param_distance(a.first_param, b.first_param, n) + param_distance(a.second_param, b.second_param, n) <=
         param_distance(a.first_param, b.second_param, n) + param_distance(a.second_param, b.first_param, n);
}

// Whether the passage at `param` is the over passage of crossing x.
bool over_at(const Crossing& x, double param) {
  return (param == x.first_param) == x.first_over;
}

struct BigonCheck {
  bool found = false;
  bool valid = false;
};

double polyline_length(const std::vector<Vec2>& p) {
  double s = 0.0;
  for (std::size_t i = 1; i < p.size(); ++i) s += distance(p[i - 1], p[i]);
  return s;
}

// The two shortest edges joining u and v; a bigon when both are short next to
// the whole curve (long joining edges are loops around the diagram). Valid for
// a Reidemeister II move iff one strand is over at both ends.
BigonCheck bigon(const KnotDiagram& d, int u, int v) {
  const CycleGraph& g = d.graph();
  std::vector<std::pair<double, const GraphEdge*>> joining;
  for (const GraphEdge& e : g.edges) {
    if ((e.from == u && e.to == v) || (e.from == v && e.to == u)) joining.emplace_back(polyline_length(e.polyline), &e);
  }
  BigonCheck b;
  if (joining.size() < 2) return b;
  std::sort(joining.begin(), joining.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  if (joining[1].first > 0.25 * d.curve().length()) return b;
  b.found = true;
  b.valid = true;
  for (std::size_t k = 0; k < 2; ++k) {
    const GraphEdge* e = joining[k].second;
    const bool over_from = g.vertices[static_cast<std::size_t>(e->from)].slots[static_cast<std::size_t>(e->from_slot)].over;
    const bool over_to = g.vertices[static_cast<std::size_t>(e->to)].slots[static_cast<std::size_t>(e->to_slot)].over;
    if (over_from != over_to) b.valid = false;
  }
  return b;
}

// Pairs unmatched crossings into bigons; leftovers are reported as forbidden.
void pair_bigons(const KnotDiagram& d, std::vector<int> loose, EventKind kind, int sign, std::vector<FlowEvent>& out) {
  std::vector<bool> used(loose.size(), false);
  const auto& xs = d.crossings();
  for (std::size_t a = 0; a < loose.size(); ++a) {
    if (used[a]) continue;
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t b = a + 1; b < loose.size(); ++b) {
      if (used[b] || !bigon(d, loose[a], loose[b]).found) continue;
      const double dist = distance(xs[static_cast<std::size_t>(loose[a])].position, xs[static_cast<std::size_t>(loose[b])].position);
      if (dist < best_d) {
        best_d = dist;
        best = static_cast<int>(b);
      }
    }
    FlowEvent ev;
    if (best < 0) {
      used[a] = true;
      ev.kind = EventKind::kForbidden;
      ev.location = xs[static_cast<std::size_t>(loose[a])].position;
      ev.crossing_delta = sign;
      ev.detail = "single crossing without a bigon partner";
      out.push_back(ev);
      continue;
    }
    used[a] = used[static_cast<std::size_t>(best)] = true;
    const int u = loose[a], v = loose[static_cast<std::size_t>(best)];
    const bool valid = bigon(d, u, v).valid;
    ev.kind = valid ? kind : EventKind::kForbidden;
    ev.location = (xs[static_cast<std::size_t>(u)].position + xs[static_cast<std::size_t>(v)].position) * 0.5;
    ev.crossing_delta = 2 * sign;
    if (!valid) ev.detail = "bigon with alternating types";
    out.push_back(ev);
  }
}

struct PassageRef {
  double param;
  int crossing;
};

std::vector<PassageRef> passages(const std::vector<Crossing>& xs) {
  std::vector<PassageRef> ps;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ps.push_back({xs[i].first_param, static_cast<int>(i)});
    ps.push_back({xs[i].second_param, static_cast<int>(i)});
  }
  std::sort(ps.begin(), ps.end(), [](const PassageRef& a, const PassageRef& b) { return a.param < b.param; });
  return ps;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step0 > 0.0)) throw Error(ErrorCode::kDomain, "step0 must be positive");
  if (!(grad_tol > 0.0)) throw Error(ErrorCode::kDomain, "grad_tol must be positive");
  if (!(delta > 0.0)) throw Error(ErrorCode::kDomain, "delta must be positive");
  if (!(fd_step > 0.0)) throw Error(ErrorCode::kDomain, "fd_step must be positive");
  if (!(max_displacement > 0.0)) throw Error(ErrorCode::kDomain, "max_displacement must be positive");
  if (samples < 16) throw Error(ErrorCode::kDomain, "samples must be at least 16");
  if (max_iters < 0) throw Error(ErrorCode::kDomain, "max_iters must be non-negative");
}

std::string to_string(Preconditioner p) { return p == Preconditioner::kNone ? "none" : "sobolev"; }

Preconditioner preconditioner_from_name(const std::string& name) {
  if (name == "none") return Preconditioner::kNone;
  if (name == "sobolev") return Preconditioner::kSobolev;
  throw Error(ErrorCode::kFormat, "unknown preconditioner '" + name + "'");
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::kNone: return "none";
    case EventKind::kR2Appear: return "R2_appear";
    case EventKind::kR2Vanish: return "R2_vanish";
    case EventKind::kR3: return "R3";
    case EventKind::kForbidden: return "FORBIDDEN";
  }
  return "?";
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::kConverged: return "converged";
    case Termination::kMaxIters: return "max_iters";
    case Termination::kForbiddenEvent: return "forbidden_event";
    case Termination::kSingular: return "singular";
    case Termination::kStalled: return "stalled";
  }
  return "?";
}

double FlowTrace::max_gmre() const {
  double m = 0.0;
  for (const FlowRecord& r : records) m = std::max(m, r.gmre);
  return m;
}

bool FlowTrace::has_forbidden() const {
  return std::any_of(events.begin(), events.end(), [](const FlowEvent& e) { return e.kind == EventKind::kForbidden; });
}

EnergyPair total_energy(const KnotDiagram& d, const FlowConfig& cfg) {
  EnergyPair e;
  e.U = energy_uf(gauss_from_curve(d.curve()), EnergyFunctional::from_name(cfg.functional));
  e.R = resistance(d, cfg.resistance, cfg.delta).total;
  return e;
}

EnergyPair total_energy(const ClosedCurve& c, const FlowConfig& cfg) { return total_energy(detect_crossings(c), cfg); }

KnotDiagram transfer_types(const KnotDiagram& old_diagram, const ClosedCurve& c) {
  std::vector<Crossing> xs = find_self_intersections(c);
  const auto& old = old_diagram.crossings();
  const ClosedCurve& oc = old_diagram.curve();
  std::vector<bool> taken(old.size(), false);
  auto unit_tangent = [](const ClosedCurve& curve, double param) {
    const auto seg = static_cast<std::size_t>(param);
    const Vec2 d = curve[seg + 1] - curve[seg];
    return d / norm(d);
  };
  for (Crossing& x : xs) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < old.size(); ++k) {
      const double dist = distance(old[k].position, x.position);
      if (!taken[k] && dist < best_d) {
        best_d = dist;
        best = static_cast<int>(k);
      }
    }
    if (best < 0) {
      x.first_over = true;
      continue;
    }
    taken[static_cast<std::size_t>(best)] = true;
    const Vec2 over = unit_tangent(oc, old[static_cast<std::size_t>(best)].over_param());
    x.first_over = dot(unit_tangent(c, x.first_param), over) >= dot(unit_tangent(c, x.second_param), over);
  }
  return KnotDiagram(c, std::move(xs));
}

namespace {

bool any_forbidden(const std::vector<FlowEvent>& events) {
  return std::any_of(events.begin(), events.end(), [](const FlowEvent& e) { return e.kind == EventKind::kForbidden; });
}

// Events implied by a matching of crossings before/after.
std::vector<FlowEvent> explain(const KnotDiagram& before, const KnotDiagram& after, const std::vector<int>& match_before,
                               const std::vector<int>& match_after) {
  const auto& xb = before.crossings();
  const auto& xa = after.crossings();
  const std::size_t n = after.curve().size();
  std::vector<FlowEvent> events;
  for (std::size_t i = 0; i < xb.size(); ++i) {
    const int j = match_before[i];
    if (j < 0) continue;
    const Crossing& a = xb[i];
    const Crossing& b = xa[static_cast<std::size_t>(j)];
    const bool over_kept = same_order(a, b, n) ? a.first_over == b.first_over : a.first_over != b.first_over;
    if (!over_kept) {
      events.push_back({0, EventKind::kForbidden, b.position, 0, "crossing type flipped"});
    }
  }

  std::vector<int> vanished, appeared;
  for (std::size_t i = 0; i < xb.size(); ++i) {
    if (match_before[i] < 0) vanished.push_back(static_cast<int>(i));
  }
  for (std::size_t j = 0; j < xa.size(); ++j) {
    if (match_after[j] < 0) appeared.push_back(static_cast<int>(j));
  }
  pair_bigons(before, vanished, EventKind::kR2Vanish, -1, events);
  pair_bigons(after, appeared, EventKind::kR2Appear, +1, events);

  // Passage order of the surviving crossings, in before-ids.
  std::vector<int> seq_b, seq_a;
  std::vector<double> param_b;
  for (const PassageRef& p : passages(xb)) {
    if (match_before[static_cast<std::size_t>(p.crossing)] >= 0) {
      seq_b.push_back(p.crossing);
      param_b.push_back(p.param);
    }
  }
  for (const PassageRef& p : passages(xa)) {
    const int i = match_after[static_cast<std::size_t>(p.crossing)];
    if (i >= 0) seq_a.push_back(i);
  }
  const std::size_t len = seq_b.size();
  if (len == 0) return events;
  std::vector<std::pair<std::size_t, std::size_t>> rotations;  // (mismatches, rotation)
  for (std::size_t r = 0; r < len; ++r) {
    std::size_t mis = 0;
    for (std::size_t k = 0; k < len; ++k) mis += seq_b[k] != seq_a[(k + r) % len] ? 1 : 0;
    if (mis == 0) return events;
    rotations.emplace_back(mis, r);
  }
  std::sort(rotations.begin(), rotations.end());

  // Each swapped pair of adjacent passages lies on one strand; remember
  // whether that strand is over at each of the two crossings. The fewest
  // mismatches need not give the right alignment, so every rotation is tried.
  using Swaps = std::map<std::pair<int, int>, std::pair<bool, bool>>;
  auto parse = [&](std::size_t rot, Swaps& swaps) {
    auto at = [&](std::size_t k) { return seq_a[(k + rot) % len]; };
    for (std::size_t k = 0; k < len; ++k) {
      if (seq_b[k] == at(k)) continue;
      const std::size_t k1 = (k + 1) % len;
      if (seq_b[k] != at(k1) || seq_b[k1] != at(k) || seq_b[k] == seq_b[k1]) return false;
      const int u = seq_b[k], v = seq_b[k1];
      const bool ou = over_at(xb[static_cast<std::size_t>(u)], param_b[k]);
      const bool ov = over_at(xb[static_cast<std::size_t>(v)], param_b[k1]);
      swaps[{std::min(u, v), std::max(u, v)}] = u < v ? std::make_pair(ou, ov) : std::make_pair(ov, ou);
      if (k1 == 0) break;
      ++k;
    }
    return true;
  };
  Swaps swaps;
  bool unexplained = true;
  for (const auto& [mis, rot] : rotations) {
    swaps.clear();
    if (parse(rot, swaps)) {
      unexplained = false;
      break;
    }
  }
  std::set<std::pair<int, int>> claimed;
  for (const auto& [uv, ov] : swaps) {
    if (claimed.count(uv)) continue;
    const auto [u, v] = uv;
    for (const auto& [uw, ow] : swaps) {
      if (claimed.count(uw) || uw.first != u || uw.second == v) continue;
      const int w = uw.second;
      const std::pair<int, int> vw{std::min(v, w), std::max(v, w)};
      if (!swaps.count(vw) || claimed.count(vw)) continue;
      claimed.insert(uv);
      claimed.insert(uw);
      claimed.insert(vw);
      const std::pair<bool, bool> s1 = ov, s2 = ow, s3 = swaps.at(vw);
      const bool top = (s1.first && s1.second) || (s2.first && s2.second) || (s3.first && s3.second);
      const bool bottom = (!s1.first && !s1.second) || (!s2.first && !s2.second) || (!s3.first && !s3.second);
      FlowEvent ev;
      ev.kind = top && bottom ? EventKind::kR3 : EventKind::kForbidden;
      ev.location = (xb[static_cast<std::size_t>(u)].position + xb[static_cast<std::size_t>(v)].position +
                     xb[static_cast<std::size_t>(w)].position) /
                    3.0;
      if (ev.kind == EventKind::kForbidden) ev.detail = "triangle with cyclic crossing types";
      events.push_back(ev);
      break;
    }
  }
  if (unexplained || claimed.size() != swaps.size()) {
    events.push_back({0, EventKind::kForbidden, {}, 0, "passage order changed without a triangle move"});
  }
  return events;
}

}  // namespace

std::vector<FlowEvent> classify_events(const KnotDiagram& before, const KnotDiagram& after, double radius) {
  const auto& xb = before.crossings();
  const auto& xa = after.crossings();
  const std::size_t n = after.curve().size();

  // Greedy matching: spatial pairs within radius, then passage parameters.
  std::vector<std::pair<int, int>> candidates;
  std::vector<int> match_after(xa.size(), -1), match_before(xb.size(), -1);
  std::vector<std::tuple<double, int, int>> cand;
  for (std::size_t i = 0; i < xb.size(); ++i) {
    for (std::size_t j = 0; j < xa.size(); ++j) {
      const double dist = distance(xb[i].position, xa[j].position);
      if (dist <= radius) {
        cand.emplace_back(dist, static_cast<int>(i), static_cast<int>(j));
        candidates.emplace_back(static_cast<int>(i), static_cast<int>(j));
      }
    }
  }
  std::sort(cand.begin(), cand.end());
  for (const auto& [dist, i, j] : cand) {
    if (match_before[static_cast<std::size_t>(i)] < 0 && match_after[static_cast<std::size_t>(j)] < 0) {
      match_before[static_cast<std::size_t>(i)] = j;
      match_after[static_cast<std::size_t>(j)] = i;
    }
  }
  {
    cand.clear();
    for (std::size_t i = 0; i < xb.size(); ++i) {
      if (match_before[i] >= 0) continue;
      for (std::size_t j = 0; j < xa.size(); ++j) {
        if (match_after[j] >= 0) continue;
        const double d = std::min(std::max(param_distance(xb[i].first_param, xa[j].first_param, n),
                                           param_distance(xb[i].second_param, xa[j].second_param, n)),
                                  std::max(param_distance(xb[i].first_param, xa[j].second_param, n),
                                           param_distance(xb[i].second_param, xa[j].first_param, n)));
        if (d <= 3.0) {
          cand.emplace_back(d, static_cast<int>(i), static_cast<int>(j));
          candidates.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
      }
    }
    std::sort(cand.begin(), cand.end());
    for (const auto& [d, i, j] : cand) {
      if (match_before[static_cast<std::size_t>(i)] < 0 && match_after[static_cast<std::size_t>(j)] < 0) {
        match_before[static_cast<std::size_t>(i)] = j;
        match_after[static_cast<std::size_t>(j)] = i;
      }
    }
  }

  std::vector<FlowEvent> events = explain(before, after, match_before, match_after);
  if (!any_forbidden(events)) return events;
  // Crossings a fraction of a sample apart match ambiguously, and across a
  // triangle move two crossings trade places. Retry with one candidate pair
  // forced, the displaced partners swapped (or else left unmatched), and keep
  // the first admissible explanation.
  for (const bool swap_partners : {true, false}) {
    for (const auto& [i, j] : candidates) {
      const auto iu = static_cast<std::size_t>(i), ju = static_cast<std::size_t>(j);
      if (match_before[iu] == j) continue;
      std::vector<int> mb = match_before, ma = match_after;
      const int j0 = mb[iu], i0 = ma[ju];
      if (j0 >= 0) ma[static_cast<std::size_t>(j0)] = -1;
      if (i0 >= 0) mb[static_cast<std::size_t>(i0)] = -1;
      mb[iu] = j;
      ma[ju] = i;
      if (swap_partners) {
        if (j0 < 0 || i0 < 0) continue;
        mb[static_cast<std::size_t>(i0)] = j0;
        ma[static_cast<std::size_t>(j0)] = i0;
      }
      std::vector<FlowEvent> alt = explain(before, after, mb, ma);
      if (!any_forbidden(alt)) return alt;
    }
  }
  return events;
}

FlowEvent classify_event(const KnotDiagram& before, const KnotDiagram& after, double radius) {
  const std::vector<FlowEvent> events = classify_events(before, after, radius);
  for (const FlowEvent& e : events) {
    if (e.kind == EventKind::kForbidden) return e;
  }
  if (!events.empty()) return events.front();
  FlowEvent none;
  none.crossing_delta = static_cast<int>(after.crossing_count()) - static_cast<int>(before.crossing_count());
  return none;
}

StepResult flow_step(const KnotDiagram& d, const FlowConfig& cfg, double step) {
  FlowState st(d, cfg);
  const double e0 = st.energy();
  const LineSearchOutcome ls = line_search(st, st.gradient(), step);
  if (!ls.accepted) throw Error(ErrorCode::kStalled, "stalled: line search step fell below 1e-12");
  return StepResult{st.diagram().curve(), ls.step, e0, st.energy()};
}

StepResult flow_step(const ClosedCurve& c, const FlowConfig& cfg, double step) {
  return flow_step(detect_crossings(c), cfg, step);
}

FlowTrace relax(const KnotDiagram& d0, const FlowConfig& cfg, const FlowObserver& observer) {
  FlowTrace trace;
  std::optional<FlowState> st;
  try {
    st.emplace(d0, cfg);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingular) throw;
    trace.terminated = Termination::kSingular;
    trace.message = e.what();
    trace.final_curve.emplace(d0.curve());
    trace.final_diagram.emplace(d0);
    return trace;
  }

  auto record = [&](int iter, double grad_norm, double step) {
    FlowRecord r;
    r.iter = iter;
    r.U = st->U();
    r.R = st->R();
    r.total = r.U + r.R;
    r.gmre = safe_gmre(st->diagram(), cfg.delta);
    r.crossings = st->diagram().crossing_count();
    r.grad_norm = grad_norm;
    r.step = step;
    r.whitney = st->whitney();
    trace.records.push_back(r);
    if (observer) observer(r, st->diagram());
  };

  std::vector<double> grad = st->gradient();
  double gnorm = st->projected_norm(grad);
  record(0, gnorm, 0.0);
  double tau = cfg.step0;
  trace.terminated = Termination::kMaxIters;
  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (gnorm < cfg.grad_tol) {
      trace.terminated = Termination::kConverged;
      break;
    }
    const KnotDiagram before = st->diagram();
    const LineSearchOutcome ls = line_search(*st, grad, tau);
    if (!ls.accepted) {
      trace.terminated = Termination::kStalled;
      trace.message = "line search step fell below 1e-12";
      break;
    }
    bool forbidden = false;
    const double radius = std::max(5.0 * ls.displacement, 1e-9);
    for (FlowEvent ev : classify_events(before, st->diagram(), radius)) {
      ev.iter = iter;
      forbidden = forbidden || ev.kind == EventKind::kForbidden;
      trace.events.push_back(ev);
    }
    grad = st->gradient();
    gnorm = st->projected_norm(grad);
    record(iter, gnorm, ls.step);
    if (forbidden) {
      trace.terminated = Termination::kForbiddenEvent;
      trace.message = trace.events.back().detail;
      break;
    }
    tau = std::min(2.0 * ls.step, 1e6);
  }
  trace.final_curve.emplace(st->diagram().curve());
  trace.final_diagram.emplace(st->diagram());
  return trace;
}

FlowTrace relax(const ClosedCurve& c0, const FlowConfig& cfg, const FlowObserver& observer) {
  return relax(detect_crossings(c0), cfg, observer);
}

}  // namespace flatknot
