#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flatknot/elliptic.hpp"
#include "flatknot/geometry.hpp"
#include "flatknot/errors.hpp"
#include "oracles.hpp"

using namespace flatknot;

TEST(Elliptic, CompleteIntegralAtZero) { EXPECT_NEAR(elliptic_k(0.0), kPi / 2.0, 1e-14); }

TEST(Elliptic, CompleteIntegralMatchesQuadrature) {
  for (double k : {0.1, 0.5, 0.8, 0.9, 0.95}) {
    EXPECT_NEAR(elliptic_k(k), oracle::ellip_k(k), 1e-11 * oracle::ellip_k(k)) << "k = " << k;
  }
}

TEST(Elliptic, LemniscaticValue) {
  // K(1/sqrt 2) = Gamma(1/4)^2 / (4 sqrt(pi)).
  const double expected = std::pow(std::tgamma(0.25), 2) / (4.0 * std::sqrt(kPi));
  EXPECT_NEAR(elliptic_k(1.0 / std::sqrt(2.0)), expected, 1e-13);
}

TEST(Elliptic, ModulusNotParameter) {
  // With the parameter convention K(0.5) would be the lemniscatic value.
  const double lemniscatic = std::pow(std::tgamma(0.25), 2) / (4.0 * std::sqrt(kPi));
  EXPECT_GT(std::abs(elliptic_k(0.5) - lemniscatic), 0.1);
}

TEST(Elliptic, NegativeModulusUsesAbsoluteValue) {
  EXPECT_DOUBLE_EQ(elliptic_k(-0.7), elliptic_k(0.7));
  EXPECT_NEAR(jacobi_sn(0.9, -0.7).sn, jacobi_sn(0.9, 0.7).sn, 1e-15);
}

TEST(Elliptic, ModulusOutOfRange) {
  EXPECT_THROW(elliptic_k(1.0), Error);
  EXPECT_THROW(jacobi_sn(0.3, 1.5), Error);
  try {
    elliptic_k(1.2);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDomain);
  }
}

TEST(Elliptic, SnMatchesInversionOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dk(0.0, 0.95);
  for (int i = 0; i < 40; ++i) {
    const double k = dk(rng);
    const double kk = oracle::ellip_k(k);
    const double u = std::uniform_real_distribution<double>(-3.0 * kk, 3.0 * kk)(rng);
    EXPECT_NEAR(jacobi_sn(u, k).sn, oracle::sn(u, k), 1e-10) << "u = " << u << " k = " << k;
  }
}

TEST(Elliptic, DegenerateModulusIsSine) {
  for (double u = -10.0; u <= 10.0; u += 0.37) EXPECT_NEAR(jacobi_sn(u, 0.0).sn, std::sin(u), 1e-14);
}

TEST(Elliptic, PropertyIdentities) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> du(-30.0, 30.0), dk(0.0, 0.999);
  for (int i = 0; i < 2000; ++i) {
    const double u = du(rng), k = dk(rng);
    const EllipticValue v = jacobi_sn(u, k);
    ASSERT_NEAR(v.sn * v.sn + v.cn * v.cn, 1.0, 1e-12);
    ASSERT_NEAR(v.dn * v.dn + k * k * v.sn * v.sn, 1.0, 1e-12);
    // Odd in u, period 4K, half period flips the sign.
    const double kk = elliptic_k(k);
    ASSERT_NEAR(jacobi_sn(-u, k).sn, -v.sn, 1e-12);
    ASSERT_NEAR(jacobi_sn(u + 4.0 * kk, k).sn, v.sn, 1e-11);
    ASSERT_NEAR(jacobi_sn(u + 2.0 * kk, k).sn, -v.sn, 1e-11);
  }
}

TEST(Elliptic, QuarterPeriodIsOne) {
  for (double k : {0.0, 0.3, 0.9, 0.99}) EXPECT_NEAR(jacobi_sn(elliptic_k(k), k).sn, 1.0, 1e-12);
}
