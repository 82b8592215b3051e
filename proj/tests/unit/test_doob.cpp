#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "brownloop/doob.hpp"

using namespace brownloop;

namespace {
const HyperbolicModel& h2() { return HyperbolicModel::h2(); }
const HyperbolicModel& h3() { return HyperbolicModel::h3(); }
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST(Density, H3IsEuclideanShell) {
  const RelativizedSpace s(h3());
  for (double r : {0.1, 1.0, 7.0}) EXPECT_NEAR(s.density(r), 4 * kPi * r * r, 1e-12 * r * r);
  EXPECT_NEAR(s.log_density(2.0), std::log(16 * kPi), 1e-12);
}

TEST(Density, H2GrowsQuadratically) {
  // phi0 ~ r e^{-r/2}, so phi0^2 sinh r grows like r^2.
  const RelativizedSpace s(h2());
  const double a = s.density(200.0) / (200.0 * 200.0), b = s.density(400.0) / (400.0 * 400.0);
  EXPECT_NEAR(a / b, 1.0, 2e-2);
}

TEST(RelativizedKernel, H3GaussianCollapse) {
  const RelativizedSpace s(h3());
  for (double t : {0.5, 10.0, 1e4})
    for (double r : {0.0, 1.0, 3.0 * std::sqrt(t)}) {
      const double g = std::pow(4 * kPi * t, -1.5) * std::exp(-r * r / (4 * t));
      EXPECT_NEAR(relativized_kernel_origin(s, t, r) / g, 1.0, 1e-12);
    }
}

TEST(RelativizedKernel, SymmetricInArguments) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const SpacePoint x{1.0, 0.4, 0.2}, y{2.5, 1.9, 1.0};
    EXPECT_NEAR(relativized_kernel(s, 3.0, x, y) / relativized_kernel(s, 3.0, y, x), 1.0, 1e-12);
    EXPECT_NEAR(relativized_kernel(s, 3.0, SpacePoint::origin(), y), relativized_kernel_origin(s, 3.0, 2.5),
                1e-9 * relativized_kernel_origin(s, 3.0, 2.5));
  }
}

TEST(Normalization, UnitMass) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    for (double t : {0.1, 1.0, 100.0}) {
      const NormalizationResult n = check_normalization(s, t);
      EXPECT_NEAR(n.value, 1.0, 1e-8) << m->name() << " t=" << t;
      EXPECT_LT(n.tail_bound, 1e-8);
    }
    EXPECT_THROW(check_normalization(s, 1.0, 3.0), std::invalid_argument);
  }
}

TEST(TailBound, DominatesMassBeyondRadius) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const double t = 4.0;
    for (double r0 : {1.0, 4.0, 8.0}) {
      const double hi = 6 * std::sqrt(t) + 10;
      const double exact = integrate_panels([&](double r) { return relativized_kernel_origin(s, t, r) * s.density(r); }, r0, hi,
                               64, 16);
      EXPECT_GE(relativized_tail_bound(s, t, r0), exact * (1 - 1e-9)) << m->name() << " r0=" << r0;
    }
  }
}

TEST(Generator, ConjugatedAgreesWithDirectForm) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const auto f = [](double r) { return std::exp(-r * r) * (1 + r); };
    const RadialGrid coarse{0.5, 5.0, 256}, fine{0.5, 5.0, 512};
    const GeneratorResult a = relativized_generator_apply(s, f, coarse);
    const GeneratorResult b = relativized_generator_apply(s, f, fine);
    EXPECT_LT(a.max_discrepancy, 5e-3);
    // Second-order stencils: halving the spacing cuts the discrepancy about fourfold.
    EXPECT_NEAR(a.max_discrepancy / b.max_discrepancy, 4.0, 0.5) << m->name();
    EXPECT_THROW(relativized_generator_apply(s, f, {0.5, 5.0, 32}), std::invalid_argument);
  }
}

TEST(Generator, DriftMatchesDefinition) {
  EXPECT_NEAR(relativized_drift(RelativizedSpace(h3()), 2.0), 1.0, 1e-12);
  const RelativizedSpace s(h2());
  EXPECT_NEAR(relativized_drift(s, 3.0), 1.0 / std::tanh(3.0) + 2 * log_phi0_derivative(h2(), 3.0), 1e-12);
}

TEST(Semigroup, IdentityHolds) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const SemigroupResult r = semigroup_identity_check(s, 2.0, radial_bump(*m));
    EXPECT_NEAR(r.relativized, r.conjugated, 1e-8 * std::abs(r.conjugated));
    EXPECT_LT(r.residual, 1e-8);
  }
}

TEST(ChapmanKolmogorov, SmallResidual) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    EXPECT_LT(std::abs(chapman_kolmogorov_residual(s, 1.0, 2.0, 1.5)), 1e-6) << m->name();
  }
}

TEST(SupNorm, AttainedAtOriginAndScales) {
  const RelativizedSpace s3(h3());
  const SupNorm a = relativized_sup_norm(s3, 100.0);
  EXPECT_NEAR(a.argmax, 0.0, 1e-12);
  EXPECT_NEAR(a.value, std::pow(400 * kPi, -1.5), 1e-15);
  const RelativizedSpace s2(h2());
  const double r = relativized_sup_norm(s2, 1e4).value / relativized_sup_norm(s2, 1e3).value;
  EXPECT_NEAR(std::log(r) / std::log(10.0), -1.5, 0.05);
}
