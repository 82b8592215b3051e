#include "brownloop/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace brownloop {

namespace {

QuadratureRule compute_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, QuadratureRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

void NodeSet::append(const NodeSet& other) {
  x.insert(x.end(), other.x.begin(), other.x.end());
  w.insert(w.end(), other.w.begin(), other.w.end());
}

NodeSet gauss_nodes(double a, double b, int n) {
  const QuadratureRule& rule = gauss_legendre(n);
  NodeSet out;
  out.x.resize(n);
  out.w.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  for (int i = 0; i < n; ++i) {
    out.x[i] = mid + half * rule.nodes[i];
    out.w[i] = half * rule.weights[i];
  }
  return out;
}

NodeSet panel_nodes(double a, double b, int panels, int n) {
  if (panels < 1) throw std::invalid_argument("panel_nodes: panels must be positive");
  NodeSet out;
  out.x.reserve(static_cast<std::size_t>(panels) * n);
  out.w.reserve(static_cast<std::size_t>(panels) * n);
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) out.append(gauss_nodes(a + p * width, a + (p + 1) * width, n));
  return out;
}

NodeSet breakpoint_nodes(std::span<const double> breakpoints, int n) {
  NodeSet out;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] > breakpoints[i]) out.append(gauss_nodes(breakpoints[i], breakpoints[i + 1], n));
  }
  return out;
}

NodeSet trapezoid_periodic(double a, double period, int n) {
  NodeSet out;
  out.x.resize(n);
  out.w.assign(n, period / n);
  for (int i = 0; i < n; ++i) out.x[i] = a + period * i / n;
  return out;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 16) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

std::vector<double> linspace(double a, double b, int count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = a;
    return out;
  }
  for (int i = 0; i < count; ++i) out[i] = a + (b - a) * i / (count - 1);
  out.back() = b;
  return out;
}

std::vector<double> geomspace(double a, double b, int count) {
  if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("geomspace: endpoints must be positive");
  std::vector<double> out(count);
  const double la = std::log(a);
  const double lb = std::log(b);
  for (int i = 0; i < count; ++i) out[i] = std::exp(la + (lb - la) * i / std::max(1, count - 1));
  out.front() = a;
  out.back() = b;
  return out;
}

}  // namespace brownloop
