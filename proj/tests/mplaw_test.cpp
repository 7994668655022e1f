#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "ktau/errors.hpp"
#include "ktau/metrics.hpp"
#include "ktau/mplaw.hpp"

namespace {

using ktau::LimitLaw;

constexpr double kGammas[] = {0.25, 0.5, 1.0, 2.0, 4.0};

// ∫ f over [a, b] after x = a + (b-a)(1 - cos φ)/2, composite midpoint rule in φ.
template <class F>
double integrate_support(F f, double a, double b, int steps = 20000) {
  const double h = std::numbers::pi / steps;
  double s = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double phi = (k + 0.5) * h;
    const double x = a + 0.5 * (b - a) * (1.0 - std::cos(phi));
    s += f(x) * 0.5 * (b - a) * std::sin(phi);
  }
  return s * h;
}

TEST(MpLawTest, DensityExamples) {
  EXPECT_EQ(ktau::mp_density(LimitLaw::standard(0.5), 3.0), 0.0);
  EXPECT_NEAR(ktau::mp_density(LimitLaw::standard(1.0), 2.0), 1.0 / (2.0 * std::numbers::pi), 1e-15);
  // Image of x = 2 under y ↦ 1/3 + (2/3)y.
  EXPECT_NEAR(ktau::mp_density(LimitLaw::kendall(1.0), 5.0 / 3.0),
              1.5 * ktau::mp_density(LimitLaw::standard(1.0), 2.0), 1e-15);
  EXPECT_EQ(ktau::mp_density(LimitLaw::standard(2.0), -0.1), 0.0);
}

TEST(MpLawTest, CdfExamples) {
  EXPECT_NEAR(ktau::mp_cdf(LimitLaw::standard(2.0), 0.0), 0.5, 1e-15);
  EXPECT_EQ(LimitLaw::standard(2.0).cdf_left(0.0), 0.0);
  EXPECT_EQ(ktau::mp_cdf(LimitLaw::standard(0.5), -1.0), 0.0);
  EXPECT_EQ(ktau::mp_cdf(LimitLaw::standard(0.5), 3.0), 1.0);
  EXPECT_NEAR(ktau::mp_cdf(LimitLaw::kendall(2.0), 1.0 / 3.0), 0.5, 1e-15);
}

TEST(MpLawTest, SupportExamples) {
  const auto [a1, b1] = ktau::support(LimitLaw::standard(1.0));
  EXPECT_NEAR(a1, 0.0, 1e-15);
  EXPECT_NEAR(b1, 4.0, 1e-15);
  const auto [a2, b2] = ktau::support(LimitLaw::standard(0.5));
  EXPECT_NEAR(a2, 0.085786, 1e-6);
  EXPECT_NEAR(b2, 2.914214, 1e-6);
  const auto [a3, b3] = ktau::support(LimitLaw::kendall(0.5));
  EXPECT_NEAR(a3, 0.390524, 1e-6);
  EXPECT_NEAR(b3, 2.276142, 1e-6);
}

TEST(MpLawTest, RejectsBadParameters) {
  EXPECT_THROW(LimitLaw(0.0), ktau::ValidationError);
  EXPECT_THROW(LimitLaw(-1.0), ktau::ValidationError);
  EXPECT_THROW(LimitLaw(1.0, 0.0), ktau::ValidationError);
  EXPECT_THROW(LimitLaw(std::nan("")), ktau::ValidationError);
}

TEST(MpLawProperty, TotalMassIsOne) {
  for (double g : kGammas) {
    const LimitLaw law = LimitLaw::standard(g);
    EXPECT_NEAR(law.continuous_mass() + law.point_mass(), 1.0, 1e-6) << g;
    const double independent = integrate_support([&](double x) { return law.density(x); }, law.a(), law.b());
    EXPECT_NEAR(independent + law.point_mass(), 1.0, 1e-6) << g;
    EXPECT_NEAR(ktau::mp_cdf(law, law.b()), 1.0, 1e-12) << g;
  }
}

TEST(MpLawProperty, CdfMatchesIndependentQuadrature) {
  for (double g : kGammas) {
    const LimitLaw law = LimitLaw::standard(g);
    for (double t : {0.1, 0.37, 0.5, 0.81}) {
      const double x = law.a() + t * (law.b() - law.a());
      const double part = integrate_support([&](double y) { return y <= x ? law.density(y) : 0.0; }, law.a(), law.b(), 200000);
      EXPECT_NEAR(law.cdf(x), law.point_mass() + part, 1e-4) << g << " " << t;
    }
  }
}

TEST(MpLawProperty, MomentsAreOneAndOnePlusGamma) {
  for (double g : kGammas) {
    const LimitLaw law = LimitLaw::standard(g);
    const double m1 = integrate_support([&](double x) { return x * law.density(x); }, law.a(), law.b());
    const double m2 = integrate_support([&](double x) { return x * x * law.density(x); }, law.a(), law.b());
    EXPECT_NEAR(m1, 1.0, 1e-6) << g;
    EXPECT_NEAR(m2, 1.0 + g, 1e-6) << g;
  }
}

TEST(MpLawProperty, CdfMonotoneOnFineGrid) {
  for (double g : kGammas) {
    for (const LimitLaw& law : {LimitLaw::standard(g), LimitLaw::kendall(g)}) {
      const auto [lo, hi] = law.support();
      double prev = 0.0;
      for (int k = 0; k <= 1000; ++k) {
        const double x = lo - 0.1 + (hi - lo + 0.2) * k / 1000.0;
        const double f = law.cdf(x);
        EXPECT_GE(f, prev - 1e-15) << g << " " << x;
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
        prev = f;
      }
    }
  }
}

TEST(MpLawProperty, AffineImageConsistent) {
  for (double g : kGammas) {
    const LimitLaw std_law = LimitLaw::standard(g);
    const LimitLaw kendall = LimitLaw::kendall(g);
    for (double x = 0.0; x <= 4.0; x += 0.013) {
      EXPECT_NEAR(kendall.cdf(x), std_law.cdf((3.0 * x - 1.0) / 2.0), 1e-14) << g << " " << x;
      EXPECT_NEAR(kendall.density(x), 1.5 * std_law.density((3.0 * x - 1.0) / 2.0), 1e-12) << g << " " << x;
    }
  }
}

TEST(MpLawProperty, NegativeScaleReflects) {
  const LimitLaw flipped(0.5, -1.0, 0.0);
  const LimitLaw law = LimitLaw::standard(0.5);
  for (double x : {0.2, 1.0, 2.5}) EXPECT_NEAR(flipped.cdf(-x), 1.0 - law.cdf_left(x), 1e-14);
}

TEST(WishartTest, SingleCoordinateNearOne) {
  const std::size_t n = 4000;
  const auto dist = ktau::wishart_esd_reference(n, 1, 3);
  EXPECT_LE(std::abs(dist.min() - 1.0), 5.0 / std::sqrt(static_cast<double>(n)));
}

TEST(WishartProperty, NonNegativeAndCloseToLimit) {
  const auto dist = ktau::wishart_esd_reference(2000, 1000, 1);
  EXPECT_GE(dist.min(), -1e-10);
  const double ks = ktau::ks_distance(ktau::CdfFunction::of(dist), ktau::CdfFunction::of(LimitLaw::standard(0.5)));
  EXPECT_LE(ks, 0.03);
}

}  // namespace
