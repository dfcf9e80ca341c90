#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "halfosc/specfun.hpp"
#include "reference_values.hpp"

namespace hs = halfosc;

namespace {

constexpr double kEulerGamma = 0.57721566490153286061;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Uniform sample away from the integers by at least `gap`.
double sample_off_integer(std::mt19937_64& rng, double lo, double hi, double gap = 1e-3) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (;;) {
    const double x = u(rng);
    if (std::abs(x - std::nearbyint(x)) > gap) return x;
  }
}

}  // namespace

TEST(Gamma, ClassicalValues) {
  EXPECT_NEAR(hs::gamma(0.5).value, std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(hs::gamma(5.0).value, 24.0, 24.0 * 1e-15);
}

TEST(Gamma, NegativeArgumentMatchesReflectionOracle) {
  // Gamma(x) Gamma(1-x) = pi / sin(pi x), with the libm gamma on the positive side.
  const double x = -1.5;
  const double oracle = std::numbers::pi / (std::sin(std::numbers::pi * x) * std::tgamma(1.0 - x));
  EXPECT_LT(rel(hs::gamma(x).value, oracle), 1e-14);
  EXPECT_NEAR(hs::gamma(x).value, 4.0 * std::sqrt(std::numbers::pi) / 3.0, 1e-14);
}

TEST(Gamma, PolesAreFlaggedNotErrors) {
  for (double x : {0.0, -1.0, -2.0, -17.0, -3.0 + 1e-10}) {
    const auto g = hs::gamma(x);
    EXPECT_TRUE(g.pole_flag) << x;
    EXPECT_FALSE(g.finite());
  }
  EXPECT_FALSE(hs::gamma(-3.0 + 1e-8).pole_flag);
}

TEST(Gamma, OverflowIsReportedSeparately) {
  const auto g = hs::gamma(200.0);
  EXPECT_TRUE(g.overflow);
  EXPECT_FALSE(g.pole_flag);
  EXPECT_TRUE(std::isinf(g.value));
  EXPECT_THROW(hs::gamma(std::nan("")), hs::DomainError);
}

TEST(Gamma, MatchesArbitraryPrecisionReference) {
  for (const auto& r : halfosc::reference::kGamma) EXPECT_LT(rel(hs::gamma(r.x).value, r.y), 1e-13) << r.x;
}

TEST(Gamma, AgreesWithLibmOnSampledArguments) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const double x = sample_off_integer(rng, -40.0, 40.0, 1e-2);
    EXPECT_LT(rel(hs::gamma(x).value, std::tgamma(x)), 1e-13) << x;
  }
}

TEST(RecipGamma, ExactZerosAtPoles) {
  EXPECT_EQ(hs::recip_gamma(0.0), 0.0);
  EXPECT_EQ(hs::recip_gamma(-3.0), 0.0);
  EXPECT_EQ(hs::recip_gamma(-40.0), 0.0);
}

TEST(RecipGamma, ReciprocalOfGamma) {
  EXPECT_NEAR(hs::recip_gamma(0.5), 1.0 / std::sqrt(std::numbers::pi), 1e-16);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const double x = sample_off_integer(rng, -30.0, 30.0);
    EXPECT_NEAR(hs::recip_gamma(x) * hs::gamma(x).value, 1.0, 1e-12) << x;
  }
}

TEST(RecipGamma, ContinuousThroughPoles) {
  // 1/Gamma(x) ~ (-1)^n n! (x + n) near x = -n.
  for (int n : {0, 1, 4}) {
    const double d = 1e-7;
    const double slope = (n % 2 ? -1.0 : 1.0) * std::tgamma(n + 1.0);
    EXPECT_NEAR(hs::recip_gamma(-n + d) / d, slope, 1e-5 * std::abs(slope));
    EXPECT_NEAR(hs::recip_gamma(-n - d) / -d, slope, 1e-5 * std::abs(slope));
  }
}

TEST(Digamma, ClassicalValues) {
  EXPECT_NEAR(hs::digamma(1.0).value, -kEulerGamma, 1e-15);
  EXPECT_NEAR(hs::digamma(0.5).value, -kEulerGamma - 2.0 * std::numbers::ln2, 1e-15);
}

TEST(Digamma, RecurrenceOnSampledPoints) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 40.0);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    EXPECT_NEAR(hs::digamma(x + 1.0).value - hs::digamma(x).value, 1.0 / x, 1e-12 * (1.0 + 1.0 / x)) << x;
  }
}

TEST(Digamma, MatchesArbitraryPrecisionReference) {
  for (const auto& r : halfosc::reference::kDigamma) {
    const double tol = r.x > 0 ? 1e-12 : 1e-11;
    EXPECT_LT(rel(hs::digamma(r.x).value, r.y), tol) << r.x;
  }
}

TEST(Digamma, PoleFlag) {
  EXPECT_TRUE(hs::digamma(0.0).pole_flag);
  EXPECT_TRUE(hs::digamma(-5.0).pole_flag);
  EXPECT_FALSE(hs::digamma(-5.5).pole_flag);
}

TEST(BetaSeries, ClosedForms) {
  EXPECT_NEAR(hs::beta_series(1.0).value, std::numbers::ln2, 1e-15);
  EXPECT_NEAR(hs::beta_series(2.0).value, 1.0 - std::numbers::ln2, 1e-15);
}

TEST(BetaSeries, ShiftIdentity) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const double x = sample_off_integer(rng, -20.0, 30.0);
    EXPECT_NEAR(hs::beta_series(x).value, 1.0 / x - hs::beta_series(x + 1.0).value,
                1e-12 * (1.0 + std::abs(1.0 / x)))
        << x;
  }
}

TEST(BetaSeries, GroupedSeriesAgreesWithDigammaIdentity) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const double x = sample_off_integer(rng, -45.0, 45.0);
    const double a = hs::beta_series(x).value;
    const double b = hs::beta_via_digamma(x).value;
    EXPECT_NEAR(a, b, 1e-12 * std::max(1.0, std::abs(a))) << x;
  }
}

TEST(BetaSeries, MatchesArbitraryPrecisionReference) {
  for (const auto& r : halfosc::reference::kBeta) EXPECT_NEAR(hs::beta_series(r.x).value, r.y, 1e-12) << r.x;
}

TEST(BetaSeries, PoleFlag) {
  EXPECT_TRUE(hs::beta_series(0.0).pole_flag);
  EXPECT_TRUE(hs::beta_series(-7.0).pole_flag);
  EXPECT_FALSE(hs::beta_series(-7.01).pole_flag);
}

// sgn Gamma(-nu) = sgn beta(-nu) for non-integer nu.
TEST(BetaSeries, SignMatchesGamma) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    const double nu = sample_off_integer(rng, -10.0, 20.0);
    EXPECT_EQ(std::signbit(hs::gamma(-nu).value), std::signbit(hs::beta_series(-nu).value)) << nu;
  }
}

// beta(-nu) >= 0 on (2M-1, 2M) and nu < 0; beta(-nu) < 0 on (2M-2, 2M-1).
TEST(BetaSeries, SignPatternByInterval) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int m = 1; m <= 10; ++m) {
    for (int i = 0; i < 10; ++i) {
      const double t = u(rng);
      EXPECT_GE(hs::beta_series(-(2.0 * m - 1.0 + t)).value, 0.0);
      EXPECT_LT(hs::beta_series(-(2.0 * m - 2.0 + t)).value, 0.0);
    }
  }
  std::uniform_real_distribution<double> neg(-30.0, -1e-3);
  for (int i = 0; i < 50; ++i) EXPECT_GE(hs::beta_series(-neg(rng)).value, 0.0);
}

TEST(Kummer, ElementaryCases) {
  EXPECT_EQ(hs::kummer(0.0, 0.5, 7.3), 1.0);
  EXPECT_NEAR(hs::kummer(0.5, 0.5, 1.0), std::numbers::e, 1e-15);
  EXPECT_NEAR(hs::kummer(1.0, 2.0, 1.0), std::numbers::e - 1.0, 1e-15);
}

TEST(Kummer, DomainAndConvergenceErrors) {
  EXPECT_THROW(hs::kummer(1.0, -2.0, 1.0), hs::DomainError);
  EXPECT_THROW(hs::kummer(1.0, 0.0, 1.0), hs::DomainError);
  EXPECT_THROW(hs::kummer(0.5, 1.5, 50.0, 10), hs::EvaluationError);
}

// d/dz 1F1(a;b;z) = (a/b) 1F1(a+1;b+1;z), against central differences.
TEST(Kummer, DerivativeIdentity) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ua(-6.0, 6.0), ub(0.3, 5.0), uz(0.0, 8.0);
  for (int i = 0; i < 100; ++i) {
    const double a = ua(rng), b = ub(rng), z = uz(rng);
    const double h = 1e-5;
    const double fd = (hs::kummer(a, b, z + h) - hs::kummer(a, b, z - h)) / (2.0 * h);
    const double exact = a / b * hs::kummer(a + 1.0, b + 1.0, z);
    EXPECT_NEAR(fd, exact, 1e-7 * std::max(1.0, std::abs(exact))) << a << " " << b << " " << z;
  }
}

TEST(HermitePcf, LowOrders) {
  EXPECT_NEAR(hs::hermite_pcf(0, 2.0), std::exp(-1.0), 1e-16);
  EXPECT_NEAR(hs::hermite_pcf(1, 1.0), std::exp(-0.25), 1e-16);
  EXPECT_EQ(hs::hermite_pcf(1, 0.0), 0.0);
  EXPECT_EQ(hs::hermite_pcf_derivative(1, 0.0), 1.0);
  // D_2 = (x^2 - 1) e^{-x^2/4}
  EXPECT_NEAR(hs::hermite_pcf(2, 1.7), (1.7 * 1.7 - 1.0) * std::exp(-0.25 * 1.7 * 1.7), 1e-15);
  EXPECT_EQ(hs::hermite_pcf(2, 0.0), -1.0);
}

TEST(HermitePcf, DerivativeMatchesFiniteDifference) {
  for (unsigned n : {0u, 1u, 3u, 8u}) {
    for (double x : {0.0, 0.7, 2.5, 6.0}) {
      const double h = 1e-5;
      const double fd = (hs::hermite_pcf(n, x + h) - hs::hermite_pcf(n, x - h)) / (2.0 * h);
      EXPECT_NEAR(hs::hermite_pcf_derivative(n, x), fd, 1e-7 * std::max(1.0, std::abs(fd)));
    }
  }
}
