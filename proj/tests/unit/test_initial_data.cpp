#include <cmath>
#include <limits>
#include <numbers>

#include <gtest/gtest.h>

#include "brownloop/initial_data.hpp"

using namespace brownloop;

namespace {
const HyperbolicModel& h2() { return HyperbolicModel::h2(); }
const HyperbolicModel& h3() { return HyperbolicModel::h3(); }
}  // namespace

TEST(InitialData, NamedDataHaveUnitMass) {
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    for (const char* name : {"radial", "offcenter", "decaying"}) {
      const InitialData f = data_by_name(*m, name);
      EXPECT_NEAR(relativized_mass(*m, f), 1.0, 1e-8) << m->name() << " " << name;
    }
  }
  EXPECT_THROW(data_by_name(h3(), "spiky"), std::invalid_argument);
}

TEST(InitialData, SymmetryAndSupport) {
  const InitialData r = radial_bump(h3());
  EXPECT_EQ(r.symmetry(), Symmetry::radial);
  EXPECT_TRUE(r.compact());
  EXPECT_DOUBLE_EQ(r.support_radius(), 2.0);
  EXPECT_EQ(r(3, {2.5, 0.0, 0.0}), 0.0);
  EXPECT_GT(r(3, {1.0, 0.3, 0.0}), 0.0);

  const InitialData o = offcenter_bump(h3(), 1.0, 2.0);
  EXPECT_EQ(o.symmetry(), Symmetry::axial);
  EXPECT_DOUBLE_EQ(o.support_ball().center.r, 1.0);
  EXPECT_DOUBLE_EQ(o.support_ball().radius, 1.0);
  EXPECT_GT(o(3, {1.0, 0.0, 0.0}), 0.0);
  EXPECT_EQ(o(3, {1.0, std::numbers::pi, 0.0}), 0.0);

  const InitialData d = decaying_data(h2());
  EXPECT_FALSE(d.compact());
  EXPECT_GT(d.truncation_radius(), 10.0);
  EXPECT_STREQ(to_string(Symmetry::axial), "axial");
}

TEST(InitialData, ZeroScaledAndConstant) {
  const InitialData z = zero_data();
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z(3, {1.0, 0.0, 0.0}), 0.0);
  const InitialData f = radial_bump(h3());
  const InitialData g = f.scaled(3.0);
  EXPECT_DOUBLE_EQ(g(3, {0.5, 0.0, 0.0}), 3.0 * f(3, {0.5, 0.0, 0.0}));
  EXPECT_NEAR(relativized_mass(h3(), g), 3.0, 1e-8);
  const InitialData c = constant_data(2.0);
  EXPECT_FALSE(c.compact());
  EXPECT_EQ(c(2, {100.0, 1.0, 0.0}), 2.0);
}

TEST(BallCells, VolumeOfGeodesicBalls) {
  // vol B(R) in H^3: pi (sinh 2R - 2R); in H^2: 2 pi (cosh R - 1).
  for (double center : {0.0, 1.5}) {
    const SupportBall b{{center, 0.0, 0.0}, 1.2};
    double v3 = 0.0, v2 = 0.0;
    for (const BallCell& c : ball_cells(3, b)) v3 += c.weight;
    for (const BallCell& c : ball_cells(2, b)) v2 += c.weight;
    EXPECT_NEAR(v3, std::numbers::pi * (std::sinh(2.4) - 2.4), 1e-10);
    EXPECT_NEAR(v2, 2 * std::numbers::pi * (std::cosh(1.2) - 1.0), 1e-10);
  }
}

TEST(BallCells, NodesLieInsideTheBall) {
  const SupportBall b{{2.0, 0.0, 0.0}, 0.7};
  for (const BallCell& c : ball_cells(3, b, {8, 8, 8})) {
    EXPECT_LE(c.s, 0.7 + 1e-12);
    EXPECT_NEAR(hyperbolic_distance(3, c.point, b.center), c.s, 1e-9);
  }
}
