#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace brownloop {

/// Raised when a numerical integral cannot reach its requested accuracy.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Gauss-Legendre rule on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the n-point Gauss-Legendre rule. Rules are computed once and cached;
/// the returned reference stays valid for the lifetime of the program.
const QuadratureRule& gauss_legendre(int n);

/// Materialized nodes and weights of a composite rule on some interval.
struct NodeSet {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const { return x.size(); }
  void append(const NodeSet& other);
};

/// n-point Gauss-Legendre rule mapped to [a, b].
NodeSet gauss_nodes(double a, double b, int n);

/// Composite Gauss-Legendre: [a, b] split into `panels` equal panels of n nodes.
NodeSet panel_nodes(double a, double b, int panels, int n);

/// Composite Gauss-Legendre over consecutive breakpoints.
NodeSet breakpoint_nodes(std::span<const double> breakpoints, int n);

/// Periodic trapezoid rule on [a, a + period) with n nodes.
NodeSet trapezoid_periodic(double a, double period, int n);

/// Pairwise (cascade) summation; the reduction order depends only on the size.
double pairwise_sum(std::span<const double> values);

template <class F>
double integrate(const NodeSet& nodes, F&& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) acc += nodes.w[i] * f(nodes.x[i]);
  return acc;
}

template <class F>
double integrate_gauss(F&& f, double a, double b, int n) {
  const QuadratureRule& rule = gauss_legendre(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

template <class F>
double integrate_panels(F&& f, double a, double b, int panels, int n) {
  const double width = (b - a) / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    acc += integrate_gauss(f, a + p * width, a + (p + 1) * width, n);
  }
  return acc;
}

/// Uniformly spaced values from a to b inclusive.
std::vector<double> linspace(double a, double b, int count);

/// Geometrically spaced values from a to b inclusive (a, b > 0).
std::vector<double> geomspace(double a, double b, int count);

}  // namespace brownloop
