#include <gtest/gtest.h>

#include <cmath>

#include "flatknot/diagram.hpp"
#include "flatknot/errors.hpp"
#include "flatknot/pendulum.hpp"
#include "flatknot/resistance.hpp"
#include "oracles.hpp"

using namespace flatknot;

namespace {

// Oracle value of the critical modulus, frozen from oracle::critical_modulus().
constexpr double kXi = 0.908908557548519;

}  // namespace

TEST(Pendulum, OracleAgreesWithFrozenXi) { EXPECT_NEAR(oracle::critical_modulus(), kXi, 1e-10); }

TEST(Pendulum, CriticalXi) {
  EXPECT_NEAR(find_critical_xi(2), kXi, 1e-10);
  EXPECT_NEAR(find_critical_xi(2), 0.90890856, 1e-8);
}

TEST(Pendulum, RootIndependentOfR) {
  EXPECT_NEAR(find_critical_xi(2), find_critical_xi(4), 1e-9);
  EXPECT_NEAR(find_critical_xi(2), find_critical_xi(6), 1e-9);
}

TEST(Pendulum, DeltaXChangesSignAtRoot) {
  EXPECT_LT(delta_x(kXi - 0.01, 2) * delta_x(kXi + 0.01, 2), 0.0);
  EXPECT_NEAR(delta_x(kXi, 2), 0.0, 1e-9);
  // Small amplitude: alpha ~ 0, the curve runs straight.
  EXPECT_NEAR(delta_x(1e-6, 2), 2.0 * kPi, 1e-6);
}

TEST(Pendulum, ParamsValidation) {
  EXPECT_THROW(PendulumParams::make(1.0, 2), Error);
  EXPECT_THROW(PendulumParams::make(0.5, 0), Error);
  const PendulumParams p = PendulumParams::make(0.5, 2);
  EXPECT_NEAR(p.omega * 2.0 * kPi, 2.0 * 2.0 * oracle::ellip_k(0.5), 1e-9);
}

TEST(Pendulum, ParityObstruction) {
  const double xi = find_critical_xi(2);
  const double s1 = closure_report(pendulum_alpha(PendulumParams::make(xi, 1), 4096)).sin_integral;
  const double s2 = closure_report(pendulum_alpha(PendulumParams::make(xi, 2), 4096)).sin_integral;
  EXPECT_GT(std::abs(s1), 1e-2);
  EXPECT_LT(std::abs(s2), 1e-8);
  try {
    build_infinity_curve(3, 512);
    FAIL() << "odd r must throw";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kParity);
    EXPECT_NE(std::string(e.what()).find("odd"), std::string::npos);
  }
}

TEST(Pendulum, InfinityCurveShape) {
  const ClosedCurve c = build_infinity_curve(2, 1024);
  EXPECT_NEAR(c.length(), 2.0 * kPi, 1e-3);
  EXPECT_EQ(whitney_index(c), 0);
  const KnotDiagram d = detect_crossings(c);
  ASSERT_EQ(d.crossing_count(), 1u);
  // Two symmetric lobes.
  const EnergyBreakdown re = resistance_energy(d);
  ASSERT_EQ(re.per_cycle.size(), 2u);
  EXPECT_NEAR(re.per_cycle[0].area, re.per_cycle[1].area, 1e-6);
}

TEST(Pendulum, HigherRIsScaledCopy) {
  const ClosedCurve c2 = build_infinity_curve(2, 1024);
  const ClosedCurve c4 = build_infinity_curve(4, 2048);
  EXPECT_LT(hausdorff_after_rigid_alignment(c2.scaled(0.5).points(), c4.points()), 2e-3);
}
