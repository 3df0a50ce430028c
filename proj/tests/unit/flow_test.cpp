#include <gtest/gtest.h>

#include <cmath>

#include "flatknot/errors.hpp"
#include "flatknot/fixtures.hpp"
#include "flatknot/flow.hpp"

using namespace flatknot;

namespace {

// Circle whose top arc is pushed down by a bump of depth D. Past D = 2 the
// finger pokes through the bottom arc.
ClosedCurve finger(double depth, std::size_t n = 512) {
  std::vector<Vec2> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double s = t - kPi / 2.0;
    p.push_back({std::cos(t), std::sin(t) - depth * std::exp(-s * s / (2.0 * 0.3 * 0.3))});
  }
  return ClosedCurve(p);
}

// Trefoil with the strand near t = 0 pushed up across the central crossing.
ClosedCurve pushed_trefoil(double depth, std::size_t n = 512) {
  std::vector<Vec2> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n) - kPi;
    p.push_back({std::sin(t) + 2.0 * std::sin(2.0 * t),
                 std::cos(t) - 2.0 * std::cos(2.0 * t) + depth * std::exp(-t * t / (2.0 * 0.4 * 0.4))});
  }
  return ClosedCurve(p);
}

ClosedCurve limacon(double b, std::size_t n = 512) {
  std::vector<Vec2> p;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double r = b + std::cos(t);
    p.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return ClosedCurve(p);
}

// Raw intersections, the pushed strand (parameters near n/2) over.
KnotDiagram pushed_on_top(const ClosedCurve& c) {
  std::vector<Crossing> xs = find_self_intersections(c);
  const double mid = static_cast<double>(c.size()) / 2.0;
  for (Crossing& x : xs) {
    if (std::abs(x.second_param - mid) < 20.0) x.first_over = false;
    else x.first_over = true;
  }
  return KnotDiagram(c, xs);
}

FlowConfig quick_config() {
  FlowConfig cfg;
  cfg.samples = 128;
  cfg.max_iters = 300;
  cfg.resistance = ResistanceFamily::kNone;
  return cfg;
}

}  // namespace

TEST(FlowConfig, Validation) {
  EXPECT_NO_THROW(FlowConfig{}.validate());
  FlowConfig c;
  c.step0 = 0.0;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.samples = 8;
  EXPECT_THROW(c.validate(), Error);
  c = {};
  c.delta = -1.0;
  EXPECT_THROW(c.validate(), Error);
  EXPECT_EQ(preconditioner_from_name(to_string(Preconditioner::kNone)), Preconditioner::kNone);
  EXPECT_THROW(preconditioner_from_name("magic"), Error);
}

TEST(Flow, CircleEnergy) {
  FlowConfig cfg = quick_config();
  const EnergyPair e = total_energy(fixtures::circle(256).with_length(kTwoPi), cfg);
  EXPECT_NEAR(e.U, kTwoPi, 1e-6);
  EXPECT_EQ(e.R, 0.0);
  cfg.resistance = ResistanceFamily::kRE;
  EXPECT_NEAR(total_energy(fixtures::circle(256).with_length(kTwoPi), cfg).R, 1.0 / kPi, 1e-4);
}

TEST(Flow, StepDescendsAndFixesCircle) {
  const FlowConfig cfg = quick_config();
  const StepResult s = flow_step(fixtures::ellipse(1.5, 1.0, 128), cfg, cfg.step0);
  EXPECT_LT(s.energy_after, s.energy_before);
  EXPECT_NEAR(s.curve.length(), kTwoPi, 1e-8);

  const ClosedCurve circle = fixtures::circle(128).with_length(kTwoPi);
  try {
    const StepResult c = flow_step(circle, cfg, cfg.step0);
    double moved = 0.0;
    for (std::size_t i = 0; i < 128; ++i) moved = std::max(moved, norm(c.curve[i] - circle[i]));
    EXPECT_LT(moved, 1e-8);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStalled);  // nothing left to descend
  }
}

TEST(Flow, FigureEightRelaxes) {
  FlowConfig cfg = quick_config();
  cfg.max_iters = 200;
  const ClosedCurve start = fixtures::noisy(fixtures::figure_eight(128), 0.05, 7);
  const FlowTrace t = relax(start, cfg);
  ASSERT_GE(t.records.size(), 2u);
  EXPECT_LT(t.records.back().grad_norm, 0.1 * t.records.front().grad_norm);
  for (std::size_t i = 1; i < t.records.size(); ++i) {
    EXPECT_LE(t.records[i].total, t.records[i - 1].total + 1e-12) << i;
    EXPECT_EQ(t.records[i].whitney, 0);
    EXPECT_NEAR(t.records[i].total, t.records[i].U + t.records[i].R, 1e-12);
  }
  ASSERT_TRUE(t.final_curve.has_value());
  EXPECT_NEAR(t.final_curve->length(), kTwoPi, 1e-8);
  EXPECT_FALSE(t.has_forbidden());
}

TEST(Flow, NoisyCircleConverges) {
  FlowConfig cfg = quick_config();
  cfg.resistance = ResistanceFamily::kMRE;
  const FlowTrace t = relax(fixtures::noisy(fixtures::circle(128), 0.1, 1), cfg);
  EXPECT_EQ(t.terminated, Termination::kConverged) << t.message;
  EXPECT_NEAR(t.records.back().U, kTwoPi, 1e-6);
}

TEST(Flow, ObserverSeesEveryRecord) {
  FlowConfig cfg = quick_config();
  cfg.max_iters = 5;
  std::size_t seen = 0;
  const FlowTrace t = relax(fixtures::ellipse(2.0, 1.0, 128), cfg,
                            [&](const FlowRecord&, const KnotDiagram&) { ++seen; });
  EXPECT_EQ(seen, t.records.size());
}

TEST(Events, FixturesHaveExpectedCrossings) {
  EXPECT_EQ(find_self_intersections(finger(2.3)).size(), 2u);
  EXPECT_EQ(find_self_intersections(finger(1.7)).size(), 0u);
  EXPECT_EQ(find_self_intersections(pushed_trefoil(2.4)).size(), 3u);
  EXPECT_EQ(find_self_intersections(pushed_trefoil(2.6)).size(), 3u);
  EXPECT_EQ(find_self_intersections(pushed_trefoil(2.49)).size(), 3u);
  EXPECT_EQ(find_self_intersections(pushed_trefoil(2.51)).size(), 3u);
  EXPECT_EQ(find_self_intersections(limacon(0.9)).size(), 1u);
  EXPECT_EQ(find_self_intersections(limacon(1.1)).size(), 0u);
}

TEST(Events, R2VanishAndAppear) {
  const KnotDiagram through(finger(2.3), find_self_intersections(finger(2.3)));
  const KnotDiagram clear = detect_crossings(finger(1.7));
  const FlowEvent gone = classify_event(through, clear, 0.05);
  EXPECT_EQ(gone.kind, EventKind::kR2Vanish) << gone.detail;
  EXPECT_EQ(gone.crossing_delta, -2);
  const FlowEvent back = classify_event(clear, through, 0.05);
  EXPECT_EQ(back.kind, EventKind::kR2Appear) << back.detail;
  EXPECT_EQ(back.crossing_delta, 2);
}

TEST(Events, R2WithAlternatingTypesIsForbidden) {
  // One strand over, then under: the bigon cannot be pulled apart.
  const KnotDiagram clasped = detect_crossings(finger(2.3), AlternatingRule{});
  const KnotDiagram clear = detect_crossings(finger(1.7));
  EXPECT_EQ(classify_event(clasped, clear, 0.05).kind, EventKind::kForbidden);
}

TEST(Events, R3) {
  // Just before and after the strand sweeps through the central crossing.
  const KnotDiagram before = pushed_on_top(pushed_trefoil(2.49));
  const KnotDiagram after = pushed_on_top(pushed_trefoil(2.51));
  const FlowEvent e = classify_event(before, after, 0.1);
  EXPECT_EQ(e.kind, EventKind::kR3) << e.detail;
  EXPECT_EQ(e.crossing_delta, 0);
}

TEST(Events, CyclicTriangleIsForbidden) {
  auto cyclic = [](const ClosedCurve& c) {
    std::vector<Crossing> xs = find_self_intersections(c);
    // a over b, b over c, c over a: no strand can move across the others.
    for (Crossing& x : xs) x.first_over = !(x.first_param < 200.0 && x.second_param > 300.0);
    return KnotDiagram(c, xs);
  };
  const FlowEvent e = classify_event(cyclic(pushed_trefoil(2.49)), cyclic(pushed_trefoil(2.51)), 0.1);
  EXPECT_EQ(e.kind, EventKind::kForbidden) << e.detail;
}

TEST(Events, SingleCrossingLossIsForbidden) {
  const KnotDiagram loop = detect_crossings(limacon(0.9));
  const KnotDiagram plain = detect_crossings(limacon(1.1));
  const FlowEvent e = classify_event(loop, plain, 0.05);
  EXPECT_EQ(e.kind, EventKind::kForbidden);
  EXPECT_EQ(e.crossing_delta, -1);
}

TEST(Events, NothingHappens) {
  const KnotDiagram a = detect_crossings(fixtures::trefoil(256));
  EXPECT_EQ(classify_event(a, a, 0.05).kind, EventKind::kNone);
  EXPECT_TRUE(classify_events(a, a, 0.05).empty());
}

TEST(Events, TransferKeepsTypes) {
  const ClosedCurve c = fixtures::trefoil(256);
  std::vector<Crossing> xs = find_self_intersections(c);
  for (Crossing& x : xs) x.first_over = true;
  const KnotDiagram typed(c, xs);
  const KnotDiagram moved = transfer_types(typed, c.translated({1e-4, 0.0}));
  ASSERT_EQ(moved.crossing_count(), 3u);
  for (const Crossing& x : moved.crossings()) EXPECT_TRUE(x.first_over);
}
