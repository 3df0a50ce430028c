#include <gtest/gtest.h>

#include <cmath>

#include "flatknot/errors.hpp"
#include "flatknot/fixtures.hpp"
#include "flatknot/pendulum.hpp"
#include "flatknot/resistance.hpp"

using namespace flatknot;

TEST(Resistance, FamilyNames) {
  for (ResistanceFamily f : {ResistanceFamily::kNone, ResistanceFamily::kRE, ResistanceFamily::kMRE, ResistanceFamily::kGMRE}) {
    EXPECT_EQ(resistance_family_from_name(to_string(f)), f);
  }
  EXPECT_EQ(resistance_family_from_name("mre"), ResistanceFamily::kMRE);
  EXPECT_THROW(resistance_family_from_name("XYZ"), Error);
}

TEST(Resistance, CircleIsOneOverPi) {
  const EnergyBreakdown b = resistance_energy(detect_crossings(fixtures::circle(512)));
  ASSERT_EQ(b.per_cycle.size(), 1u);
  EXPECT_NEAR(b.total, 1.0 / kPi, 1e-4);
}

TEST(Resistance, TrefoilHasElevenTerms) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(512));
  const EnergyBreakdown b = resistance_energy(d);
  EXPECT_EQ(b.per_cycle.size(), 11u);
  double sum = 0.0;
  for (const CycleContribution& c : b.per_cycle) {
    EXPECT_TRUE(c.alternated);
    EXPECT_NEAR(c.value, 1.0 / c.area, 1e-12);
    sum += c.value;
  }
  EXPECT_NEAR(b.total, sum, 1e-12);
}

TEST(Resistance, InfinityCurveLobes) {
  const KnotDiagram d = detect_crossings(build_infinity_curve(2, 1024));
  const EnergyBreakdown b = resistance_energy(d);
  ASSERT_EQ(b.per_cycle.size(), 2u);
  EXPECT_NEAR(b.per_cycle[0].area, b.per_cycle[1].area, 1e-6);
  EXPECT_NEAR(b.total, 2.0 / b.per_cycle[0].area, 1e-6);
}

TEST(Resistance, ScalingLaw) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(256));
  const double re = resistance_energy(d).total;
  for (double s : {0.5, 3.0}) EXPECT_NEAR(resistance_energy(d.scaled(s)).total * s * s, re, 1e-9 * re);
}

TEST(Resistance, MreThresholds) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(512));
  EXPECT_EQ(mre(d, 1e-3).total, 0.0);
  const EnergyBreakdown big = mre(d, 1e6);
  EXPECT_EQ(big.per_cycle.size(), 11u);
  EXPECT_NEAR(big.total, resistance_energy(d).total - 11.0 / 1e6, 1e-9);
  for (const CycleContribution& c : mre(d, 5.0).per_cycle) {
    EXPECT_LT(c.area, 5.0);
    EXPECT_GT(c.value, 0.0);
  }
}

// The face-component search and the filtered full enumeration are separate routes.
TEST(Resistance, MreRoutesAgree) {
  int compared = 0;
  for (std::uint64_t seed = 1; seed < 60 && compared < 12; ++seed) {
    KnotDiagram d = detect_crossings(fixtures::random_fourier(256, 3, seed));
    if (d.crossing_count() == 0 || d.crossing_count() > 7) continue;
    ++compared;
    for (double delta : {0.05, 0.3, 1.0, 4.0}) {
      const EnergyBreakdown a = mre(d, delta), b = mre_full_enumeration(d, delta);
      ASSERT_EQ(a.per_cycle.size(), b.per_cycle.size()) << "seed " << seed << " delta " << delta;
      EXPECT_NEAR(a.total, b.total, 1e-9 * std::max(1.0, std::abs(b.total)));
    }
  }
  EXPECT_GE(compared, 8);
}

TEST(Resistance, GmreOnTrefoilEqualsMreForLargeDelta) {
  // No 4-arc cycles on the trefoil, so the watched sets coincide.
  const KnotDiagram d = detect_crossings(fixtures::trefoil(512));
  EXPECT_NEAR(gmre(d, 100.0).total, mre(d, 100.0).total, 1e-12);
  EXPECT_EQ(gamma_delta(d, 100.0).size(), 11u);
}

TEST(Resistance, GammaBoundFormula) {
  EXPECT_DOUBLE_EQ(gamma_bound(0), 0.0);
  EXPECT_NEAR(gamma_bound(1), 1.0 / 24 + 1.0 / 6 + 0.5 + 1.0, 1e-12);
  EXPECT_NEAR(gamma_bound(4), 256.0 / 24 + 64.0 / 6 + 8.0 + 4.0, 1e-12);
}

TEST(Resistance, GammaDeltaMembers) {
  const KnotDiagram d = detect_crossings(fixtures::random_fourier(256, 4, 5));
  for (const DiagramCycle& c : gamma_delta(d, 2.0)) {
    EXPECT_LT(c.area, 2.0);
    EXPECT_LE(c.arc_count(), 4u);
    if (c.arc_count() <= 3) EXPECT_TRUE(c.alternated);
  }
  GmreOptions strict;
  strict.alternated_four_arc = true;
  for (const DiagramCycle& c : gamma_delta(d, 2.0, strict)) EXPECT_TRUE(c.alternated);
}

TEST(Resistance, Dispatch) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(256));
  EXPECT_TRUE(watched_cycles(d, ResistanceFamily::kNone, 1.0).empty());
  EXPECT_EQ(resistance(d, ResistanceFamily::kNone, 1.0).total, 0.0);
  EXPECT_EQ(resistance(d, ResistanceFamily::kRE, 1.0).total, resistance_energy(d).total);
  EXPECT_EQ(watched_cycles(d, ResistanceFamily::kRE, 1.0).size(), 11u);
}

TEST(Resistance, LowAreaDomainsCoverSmallFaces) {
  const KnotDiagram d = detect_crossings(fixtures::trefoil(512));
  // All four bounded faces have area near 4.2..4.6 and touch each other.
  EXPECT_TRUE(low_area_domains(d.graph(), 1.0).empty());
  EXPECT_EQ(low_area_domains(d.graph(), 10.0).size(), 1u);
}
