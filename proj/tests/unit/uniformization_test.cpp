#include <gtest/gtest.h>

#include <cmath>

#include "flatknot/errors.hpp"
#include "flatknot/fixtures.hpp"
#include "flatknot/pendulum.hpp"
#include "flatknot/uniformization.hpp"

using namespace flatknot;

namespace {

const EnergyFunctional kX2 = EnergyFunctional::power(2.0);
const EnergyFunctional kX1 = EnergyFunctional::power(1.0);

ClosedCurve unit_circle(std::size_t n) { return fixtures::circle(n).with_length(kTwoPi); }

}  // namespace

TEST(Functional, Parsing) {
  EXPECT_EQ(EnergyFunctional::from_name("x^2").name(), "x^2");
  EXPECT_DOUBLE_EQ(EnergyFunctional::from_name("x^4").value(2.0), 16.0);
  EXPECT_NEAR(EnergyFunctional::from_name("x^2.5").value(-4.0), 32.0, 1e-12);
  EXPECT_THROW(EnergyFunctional::from_name("cosh"), Error);
  EXPECT_THROW(EnergyFunctional::from_name("x^0.5"), Error);
  EXPECT_THROW(EnergyFunctional("bad", [](double x) { return x + 1.0; }), Error);
}

TEST(Functional, NumericDerivativesFallback) {
  const EnergyFunctional e("cubic", [](double x) { return x * x * x; });
  EXPECT_NEAR(e.first(2.0), 12.0, 1e-6);
  EXPECT_NEAR(e.second(2.0), 12.0, 1e-4);
}

TEST(Uniformization, CircleCurvature) {
  for (double k : discrete_curvature(gauss_from_curve(unit_circle(512)))) EXPECT_NEAR(k, 1.0, 1e-4);
  for (double k : discrete_curvature(gauss_from_curve(fixtures::double_circle(512).with_length(kTwoPi)))) {
    EXPECT_NEAR(k, 2.0, 1e-3);
  }
}

TEST(Uniformization, CircleEnergies) {
  EXPECT_NEAR(energy_uf(gauss_from_curve(unit_circle(512)), kX2), kTwoPi, 1e-6);
  EXPECT_NEAR(energy_uf(gauss_from_curve(unit_circle(512)), kX1), kTwoPi, 1e-6);
  EXPECT_NEAR(energy_uf(gauss_from_curve(fixtures::double_circle(512).with_length(kTwoPi)), kX2), 8.0 * kPi, 1e-3);
}

TEST(Uniformization, LinearFunctionalIsTurningNumber) {
  const std::vector<ClosedCurve> curves = {unit_circle(256), fixtures::double_circle(512).with_length(kTwoPi),
                                           build_infinity_curve(2, 1024), fixtures::trefoil(512).with_length(kTwoPi),
                                           fixtures::noisy(unit_circle(256), 0.1, 5)};
  for (const ClosedCurve& c : curves) {
    EXPECT_NEAR(energy_uf(gauss_from_curve(c), kX1), kTwoPi * whitney_index(c), 1e-3);
  }
}

TEST(Uniformization, ExtendedOnCircle) {
  const ClosedCurve c = unit_circle(512);
  EXPECT_NEAR(energy_uf_extended(c, kX2, 0.05), kTwoPi, 1e-2);
  EXPECT_THROW(energy_uf_extended(c, kX2, 1e-4), Error);
  EXPECT_THROW(energy_uf_extended(c, kX2, 1.0), Error);
}

TEST(Uniformization, ExtendedConvergesOnEllipse) {
  const ClosedCurve c = fixtures::ellipse(2.0, 1.0, 2048).with_length(kTwoPi);
  const double u = energy_uf(gauss_from_curve(c), kX2);
  double prev = 1e9;
  for (double eps : {0.2, 0.1, 0.05, 0.025}) {
    const double err = std::abs(energy_uf_extended(c, kX2, eps) - u);
    EXPECT_LT(err, prev);
    prev = err;
  }
}

TEST(Uniformization, ScalingLaw) {
  const ClosedCurve c = fixtures::noisy(unit_circle(256), 0.05, 9);
  const double u = energy_uf(gauss_from_curve(c), kX2);
  for (double s : {0.25, 2.0, 5.0}) EXPECT_NEAR(energy_uf(gauss_from_curve(c.scaled(s)), kX2) * s, u, 1e-9);
}

TEST(Uniformization, CircleIsCritical) {
  const GaussRep g = gauss_from_curve(unit_circle(512));
  EXPECT_LT(l2_norm(g, uf_gradient(g, kX2)), 1e-6);
  const ELResidualReport r = el_residual(g, kX2);
  EXPECT_NEAR(r.c1, 0.0, 1e-6);
  EXPECT_NEAR(r.c2, 0.0, 1e-6);
  EXPECT_LT(r.rms_residual, 1e-6);
}

TEST(Uniformization, PerturbedCircleIsNotCritical) {
  const GaussRep g = gauss_from_curve(fixtures::noisy(unit_circle(512), 0.1, 3));
  // Regression floor measured once on this fixture.
  EXPECT_GT(el_residual(g, kX2).rms_residual, 1e-1);
}

TEST(Uniformization, InfinityCurveIsCritical) {
  const GaussRep g = gauss_from_curve(build_infinity_curve(2, 1024));
  EXPECT_LT(el_residual(g, kX2).rms_residual, 1e-3);
  EXPECT_LT(l2_norm(g, uf_gradient(g, kX2)), 1e-3);
}

TEST(Uniformization, ProjectionRemovesClosureDirections) {
  const GaussRep g = gauss_from_curve(fixtures::noisy(unit_circle(256), 0.1, 4));
  std::vector<double> v(g.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(3.0 * i) + 0.5;
  const std::vector<double> p = project_closure(g, v);
  double sc = 0.0, ss = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    sc += p[i] * std::cos(g.alpha[i]);
    ss += p[i] * std::sin(g.alpha[i]);
  }
  EXPECT_NEAR(sc, 0.0, 1e-9);
  EXPECT_NEAR(ss, 0.0, 1e-9);
  const std::vector<double> pp = project_closure(g, p);
  for (std::size_t i = 0; i < p.size(); ++i) EXPECT_NEAR(pp[i], p[i], 1e-12);
}

// Oracle: two-sided differences of the energy itself, projected the same way.
TEST(Uniformization, GradientMatchesFiniteDifferences) {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const EnergyFunctional& e = seed % 2 == 0 ? kX2 : EnergyFunctional::power(4.0);
    GaussRep g = gauss_from_curve(fixtures::noisy(unit_circle(96), 0.1, seed));
    g.end_value = g.alpha_end();
    std::vector<double> fd(g.size());
    const double eps = 1e-5;
    for (std::size_t j = 0; j < g.size(); ++j) {
      GaussRep p = g, m = g;
      p.alpha[j] += eps;
      m.alpha[j] -= eps;
      if (j == 0) {
        *p.end_value += eps;
        *m.end_value -= eps;
      }
      fd[j] = (energy_uf(p, e) - energy_uf(m, e)) / (2.0 * eps * g.step);
    }
    fd = project_closure(g, fd);
    const std::vector<double> an = uf_gradient(g, e);
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < fd.size(); ++j) {
      num += (an[j] - fd[j]) * (an[j] - fd[j]);
      den += fd[j] * fd[j];
    }
    EXPECT_LT(std::sqrt(num / den), 1e-5) << "seed " << seed;
  }
}
