#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "brownloop/hkernel.hpp"

using namespace brownloop;

namespace {

constexpr double kPi = std::numbers::pi;

const HyperbolicModel& h2() { return HyperbolicModel::h2(); }
const HyperbolicModel& h3() { return HyperbolicModel::h3(); }

double rel(double a, double b) { return std::abs(a / b - 1.0); }

}  // namespace

TEST(Model, Constants) {
  EXPECT_EQ(h3().dimension(), 3);
  EXPECT_DOUBLE_EQ(h3().rho(), 1.0);
  EXPECT_DOUBLE_EQ(h2().rho(), 0.5);
  EXPECT_EQ(h2().multiplicity(), 1);
  EXPECT_NEAR(h3().sphere_area(), 4 * kPi, 1e-15);
  EXPECT_NEAR(h2().sphere_area(), 2 * kPi, 1e-15);
  // Calibrated normalization matches the exact Plancherel constants.
  EXPECT_NEAR(h3().normalization_constant(), 1.0 / (2 * kPi * kPi), 1e-9);
  EXPECT_NEAR(h2().normalization_constant(), 1.0 / (2 * kPi), 1e-9);
  EXPECT_THROW(HyperbolicModel::by_name("h4"), std::invalid_argument);
  EXPECT_THROW(HyperbolicModel::create(4), std::invalid_argument);
}

TEST(Model, QuadratureSpecValidation) {
  QuadratureSpec s;
  s.node_count = 8;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  s.tolerance = 1e-3;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = {};
  EXPECT_NEAR(s.spectral_cutoff(4.0), 4.0, 1e-15);
  EXPECT_NEAR(s.spatial_cutoff(4.0), 22.0, 1e-15);
}

TEST(SphericalPhi, IdentityAndClosedForm) {
  for (const HyperbolicModel* m : {&h2(), &h3()})
    for (double l : {0.0, 0.7, 3.0}) EXPECT_NEAR(spherical_phi(*m, l, 0.0), 1.0, 1e-14);
  EXPECT_NEAR(spherical_phi(h3(), 0.0, 2.0), 2.0 / std::sinh(2.0), 1e-14);
  EXPECT_NEAR(spherical_phi(h3(), 0.0, 2.0), 0.5514411295435664, 1e-15);
  EXPECT_NEAR(spherical_phi(h3(), 1.5, 2.0), std::sin(3.0) / (1.5 * std::sinh(2.0)), 1e-14);
  EXPECT_DOUBLE_EQ(spherical_phi(h3(), -1.5, 2.0), spherical_phi(h3(), 1.5, 2.0));
}

TEST(SphericalPhi, H2MatchesLegendreFunction) {
  // P_{-1/2 + i lambda}(cosh r) evaluated in 30-digit arithmetic.
  struct Ref {
    double lambda, r, value;
  };
  for (const Ref& c : {Ref{0.0, 1.0, 0.94086215924934982}, Ref{0.0, 5.0, 0.33373135220586802},
                       Ref{0.0, 10.0, 0.048841626790543287}, Ref{1.0, 1.0, 0.72207522827937457},
                       Ref{2.5, 3.0, 0.14799814660544937}, Ref{0.5, 0.3, 0.98882338018336724}}) {
    EXPECT_LT(rel(spherical_phi(h2(), c.lambda, c.r), c.value), 1e-9) << c.lambda << " " << c.r;
    EXPECT_DOUBLE_EQ(spherical_phi(h2(), -c.lambda, c.r), spherical_phi(h2(), c.lambda, c.r));
  }
}

TEST(Phi0, ValuesTablesAndEnvelope) {
  EXPECT_DOUBLE_EQ(phi0(h3(), 0.0), 1.0);
  EXPECT_NEAR(phi0(h2(), 0.0), 1.0, 1e-14);
  EXPECT_NEAR(phi0(h3(), 3.0), 0.29946470900646815, 1e-15);
  EXPECT_LT(rel(phi0(h2(), 10.0), 0.048841626790543287), 1e-9);
  const EnvelopeConstants& c = h2().phi0_constants();
  const double shape = (1.0 + 10.0) * std::exp(-5.0);
  EXPECT_GE(phi0(h2(), 10.0), c.lower * shape);
  EXPECT_LE(phi0(h2(), 10.0), c.upper * shape);
  // Table, far table and direct evaluation agree across their seams.
  for (double r : {63.9, 64.0, 64.1, 500.0, 1023.0, 1100.0}) {
    const double direct = spherical_phi(h2(), 0.0, r);
    EXPECT_LT(rel(phi0(h2(), r), direct), 1e-9) << r;
  }
  for (double r : {0.5, 5.0, 40.0}) {
    const double h = 1e-5;
    const double fd = (log_phi0(h2(), r + h) - log_phi0(h2(), r - h)) / (2 * h);
    EXPECT_NEAR(log_phi0_derivative(h2(), r), fd, 1e-8);
  }
  EXPECT_THROW(phi0(h2(), -1.0), std::invalid_argument);
}

TEST(Plancherel, Shapes) {
  EXPECT_EQ(plancherel_density(h2(), 0.0), 0.0);
  EXPECT_EQ(plancherel_density(h3(), 0.0), 0.0);
  EXPECT_NEAR(plancherel_density(h3(), 2.0) / plancherel_density(h3(), 1.0), 4.0, 1e-14);
  EXPECT_NEAR(plancherel_density(h2(), 40.0) / 40.0, plancherel_density(h2(), 20.0) / 20.0, 1e-14);
}

TEST(HeatKernel, H3ClosedForm) {
  const double c = std::pow(4 * kPi, -1.5);
  EXPECT_LT(rel(heat_kernel(h3(), 1.0, 0.0), c * std::exp(-1.0)), 1e-14);
  EXPECT_LT(rel(heat_kernel(h3(), 1.0, 2.0), c * 2.0 / std::sinh(2.0) * std::exp(-2.0)), 1e-14);
  EXPECT_THROW(heat_kernel(h3(), 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(heat_kernel(h3(), -1.0, 1.0), std::invalid_argument);
}

TEST(HeatKernel, H2MatchesHighPrecisionAbelIntegral) {
  struct Ref {
    double t, r, value;
  };
  for (const Ref& c : {Ref{1.0, 0.0, 0.057535755205721975}, Ref{1.0, 2.0, 0.015914115768910426},
                       Ref{10.0, 5.0, 6.749473516310217e-5}, Ref{0.1, 0.5, 0.40365459509409944},
                       Ref{100.0, 30.0, 1.6276189020430541e-21}}) {
    EXPECT_LT(rel(heat_kernel(h2(), c.t, c.r), c.value), 1e-8) << c.t << " " << c.r;
  }
}

TEST(HeatKernel, InversionAgreesWithAbelInH2) {
  for (double t : {0.05, 1.0, 10.0, 100.0})
    for (double r : {0.0, 0.5, 3.0, 2.0 * std::sqrt(t)}) {
      const double a = std::exp(log_shifted_heat_kernel_h2_abel(t, r));
      const KernelEvaluation k = heat_kernel_inversion(h2(), t, r);
      EXPECT_LT(std::abs(k.value - a), std::max(1e-9 * a, 2 * k.error)) << t << " " << r;
    }
}

TEST(HeatKernel, EnvelopeBrackets) {
  for (const HyperbolicModel* m : {&h2(), &h3()})
    for (double t : {1.0, 10.0, 100.0})
      for (double r : {0.0, 1.0, 5.0, 20.0}) {
        const Bracket b = heat_kernel_envelope(*m, t, r);
        const double h = heat_kernel(*m, t, r);
        EXPECT_LE(b.lower, h * (1 + 1e-9)) << m->name() << " " << t << " " << r;
        EXPECT_GE(b.upper, h * (1 - 1e-9)) << m->name() << " " << t << " " << r;
      }
  // The H^3 envelope has exactly the closed-form shape.
  EXPECT_NEAR(h3().kernel_constants().lower, std::pow(4 * kPi, -1.5), 1e-9);
  EXPECT_NEAR(h3().kernel_constants().upper, std::pow(4 * kPi, -1.5), 1e-9);
}

TEST(HeatKernel, ShiftedLogFiniteAtLargeTimes) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const double v = log_shifted_heat_kernel(*m, 1e6, 100.0);
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_NEAR(v, log_shifted_heat_kernel(*m, 1e6, 0.0) + log_phi0(*m, 100.0) - 1e4 / 4e6, 1e-3 * std::abs(v));
  }
}

TEST(KernelProfile, MatchesDirectEvaluation) {
  for (double t : {0.5, 10.0, 1000.0}) {
    const KernelProfile p = KernelProfile::shifted_heat(h2(), t, 6 * std::sqrt(t) + 10);
    EXPECT_TRUE(p.tabulated());
    for (double r : linspace(0.0, 6 * std::sqrt(t) + 10, 23))
      EXPECT_NEAR(p.log_value(r), log_shifted_heat_kernel(h2(), t, r), 1e-9) << t << " " << r;
  }
  const KernelProfile p3 = KernelProfile::shifted_heat(h3(), 2.0, 10.0);
  EXPECT_FALSE(p3.tabulated());
  EXPECT_NEAR(p3.log_value(3.0), log_shifted_heat_kernel_h3(2.0, 3.0), 1e-15);
}

TEST(RatioGap, ZeroAtOriginAndDecaying) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    EXPECT_EQ(ratio_gap(*m, 10.0, {3.0, 0.2, 0.0}, SpacePoint::origin()), 0.0);
    double prev = 1e300;
    for (double t : {1e1, 1e2, 1e3, 1e4}) {
      const double gap = std::abs(ratio_gap(*m, t, {3.0, 0.0, 0.0}, {1.0, 0.0, 0.0}));
      EXPECT_LT(gap, prev);
      prev = gap;
    }
    const double g100 = ratio_gap_sup(*m, 100.0, 10.0, 1.0).value;
    EXPECT_LT(g100, 0.3);
    EXPECT_GT(g100, 0.01);
  }
}

TEST(Busemann, RhoScaledBound) {
  EXPECT_NEAR(busemann_rho(h3(), SpacePoint::origin()), 0.0, 1e-15);
  EXPECT_NEAR(busemann_rho(h2(), {3.0, 0.0, 0.0}), 1.5, 1e-12);
  EXPECT_LE(busemann_rho(h3(), {2.0, 1.0, 2.0}), 2.0);
}

TEST(Phi0Product, ProductFormula) {
  EXPECT_EQ(phi0_product_check(h3(), {1.0, 0.5, 0.0}, SpacePoint::origin()), 0.0);
  EXPECT_LT(std::abs(phi0_product_check(h3(), {1.0, 0.0, 0.0}, {2.0, 1.0, 0.3})), 1e-8);
  EXPECT_LT(std::abs(phi0_product_check(h2(), {1.0, 0.0, 0.0}, {1.0, 2.0, 0.0})), 1e-8);
  EXPECT_THROW(phi0_product_check(h2(), {1.0, 0.0, 0.0}, {1.0, 2.0, 0.0}, 4), std::invalid_argument);
}
