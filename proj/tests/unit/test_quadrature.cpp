#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "brownloop/chebyshev.hpp"
#include "brownloop/quadrature.hpp"

using namespace brownloop;

TEST(GaussLegendre, IntegratesPolynomialsUpToDegree2nMinus1) {
  for (int n : {1, 2, 5, 16, 24, 48}) {
    const QuadratureRule& rule = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += rule.weights[i] * std::pow(rule.nodes[i], k);
      const double exact = k % 2 ? 0.0 : 2.0 / (k + 1);
      EXPECT_NEAR(acc, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GaussLegendre, RejectsNonPositiveOrder) { EXPECT_THROW(gauss_legendre(0), std::invalid_argument); }

TEST(GaussLegendre, CachedRulesAreStable) { EXPECT_EQ(&gauss_legendre(24), &gauss_legendre(24)); }

TEST(Panels, ExponentialIntegral) {
  const double v = integrate_panels([](double x) { return std::exp(-x); }, 0.0, 30.0, 30, 16);
  EXPECT_NEAR(v, 1.0 - std::exp(-30.0), 1e-15);
  const NodeSet nodes = panel_nodes(0.0, 2.0, 4, 8);
  EXPECT_EQ(nodes.size(), 32u);
  EXPECT_NEAR(integrate(nodes, [](double x) { return x * x; }), 8.0 / 3.0, 1e-14);
}

TEST(Panels, BreakpointsMatchPanels) {
  const std::vector<double> b{0.0, 0.1, 0.5, 2.0};
  const NodeSet nodes = breakpoint_nodes(b, 12);
  EXPECT_NEAR(integrate(nodes, [](double x) { return std::sin(x); }), 1.0 - std::cos(2.0), 1e-15);
}

TEST(Trapezoid, ExactForLowTrigonometricPolynomials) {
  const NodeSet ring = trapezoid_periodic(0.0, 2.0 * std::numbers::pi, 16);
  EXPECT_NEAR(integrate(ring, [](double a) { return std::cos(3 * a) + std::cos(a) * std::cos(a); }), std::numbers::pi,
              1e-13);
}

TEST(PairwiseSum, AccurateAndOrderDeterministic) {
  std::vector<double> v(100001, 0.1);
  EXPECT_NEAR(pairwise_sum(v), 10000.1, 1e-9);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<double> w(1000);
  for (double& x : w) x = u(rng);
  EXPECT_EQ(pairwise_sum(w), pairwise_sum(w));
  EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
}

TEST(Spacing, EndpointsAreExact) {
  const auto l = linspace(-1.0, 3.0, 5);
  ASSERT_EQ(l.size(), 5u);
  EXPECT_EQ(l.front(), -1.0);
  EXPECT_EQ(l.back(), 3.0);
  EXPECT_DOUBLE_EQ(l[1], 0.0);
  const auto g = geomspace(1e-3, 1e3, 7);
  EXPECT_DOUBLE_EQ(g.front(), 1e-3);
  EXPECT_DOUBLE_EQ(g.back(), 1e3);
  EXPECT_NEAR(g[3], 1.0, 1e-14);
  EXPECT_THROW(geomspace(0.0, 1.0, 3), std::invalid_argument);
}

TEST(Chebyshev, InterpolatesValueAndDerivative) {
  const ChebyshevTable t([](double x) { return std::sin(x) * std::exp(-0.1 * x); }, 0.0, 20.0, 20, 16);
  for (double x : linspace(0.0, 20.0, 97)) {
    EXPECT_NEAR(t(x), std::sin(x) * std::exp(-0.1 * x), 1e-13);
    EXPECT_NEAR(t.derivative(x), (std::cos(x) - 0.1 * std::sin(x)) * std::exp(-0.1 * x), 1e-11);
  }
  EXPECT_THROW(t(20.5), std::out_of_range);
  EXPECT_THROW(ChebyshevTable([](double x) { return x; }, 1.0, 0.0, 2, 8), std::invalid_argument);
}
