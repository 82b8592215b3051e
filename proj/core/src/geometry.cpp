#include "brownloop/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace brownloop {

namespace {

// log(sinh(x)) for x > 0 without overflow.
double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

}  // namespace

void SpacePoint::validate(int dimension) const {
  if (dimension != 2 && dimension != 3)
    throw std::invalid_argument("points are only supported in H^2 and H^3");
  if (!std::isfinite(r) || r < 0.0) throw std::invalid_argument("point radius must be finite and >= 0");
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw std::invalid_argument("point angles must be finite");
  if (dimension == 3 && (theta < 0.0 || theta > std::numbers::pi))
    throw std::invalid_argument("polar angle theta must lie in [0, pi]");
}

std::array<double, 3> direction(int dimension, const SpacePoint& p) {
  if (dimension == 2) return {std::cos(p.theta), std::sin(p.theta), 0.0};
  const double s = std::sin(p.theta);
  return {s * std::cos(p.phi), s * std::sin(p.phi), std::cos(p.theta)};
}

std::array<double, 4> hyperboloid(int dimension, const SpacePoint& p) {
  const auto n = direction(dimension, p);
  const double sh = std::sinh(p.r);
  return {std::cosh(p.r), sh * n[0], sh * n[1], sh * n[2]};
}

double distance_from_chord(double a, double b, double chord) {
  // sinh^2(d/2) = sinh^2((a-b)/2) + sinh(a) sinh(b) sin^2(gamma/2), sin(gamma/2) = chord/2.
  const double half_gap = std::sinh(0.5 * (a - b));
  const double s = 0.5 * chord;
  if (a + b < 300.0) {
    const double x = half_gap * half_gap + std::sinh(a) * std::sinh(b) * s * s;
    return 2.0 * std::asinh(std::sqrt(x));
  }
  // Log domain: log x = logaddexp(log A, log B).
  const double log_a = (a == b) ? -INFINITY : 2.0 * log_sinh(0.5 * std::abs(a - b));
  const double log_b = (s == 0.0 || a == 0.0 || b == 0.0) ? -INFINITY
                                                          : log_sinh(a) + log_sinh(b) + 2.0 * std::log(s);
  const double hi = std::max(log_a, log_b);
  const double lo = std::min(log_a, log_b);
  if (hi == -INFINITY) return 0.0;
  const double log_x = hi + std::log1p(std::exp(lo - hi));
  if (log_x > 80.0) return log_x + std::log(4.0);
  return 2.0 * std::asinh(std::exp(0.5 * log_x));
}

double distance_from_cosine(double a, double b, double cos_gamma) {
  const double c = std::clamp(cos_gamma, -1.0, 1.0);
  return distance_from_chord(a, b, std::sqrt(2.0 * (1.0 - c)));
}

double hyperbolic_distance(int dimension, const SpacePoint& p, const SpacePoint& q) {
  p.validate(dimension);
  q.validate(dimension);
  const auto np = direction(dimension, p);
  const auto nq = direction(dimension, q);
  double chord_sq = 0.0;
  for (int i = 0; i < 3; ++i) chord_sq += (np[i] - nq[i]) * (np[i] - nq[i]);
  return distance_from_chord(p.r, q.r, std::sqrt(chord_sq));
}

double half_space_height(int dimension, const SpacePoint& p) {
  // Ball model: x = tanh(r/2) n, xi = reference direction (theta = 0).
  const auto n = direction(dimension, p);
  const double x = std::tanh(0.5 * p.r);
  const std::array<double, 3> xi = dimension == 2 ? std::array<double, 3>{1.0, 0.0, 0.0}
                                                  : std::array<double, 3>{0.0, 0.0, 1.0};
  double dist_sq = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double diff = x * n[i] - xi[i];
    dist_sq += diff * diff;
  }
  return (1.0 - x * x) / dist_sq;
}

double busemann(int dimension, const SpacePoint& p) {
  p.validate(dimension);
  // height = 1 / (cosh r - sinh r cos theta) = 1 / (e^{-r} + sinh r (1 - cos theta)).
  const double one_minus_cos = 2.0 * std::pow(std::sin(0.5 * p.theta), 2);
  if (p.r < 300.0) return -std::log(std::exp(-p.r) + std::sinh(p.r) * one_minus_cos);
  const double e2 = std::exp(-2.0 * p.r);
  return -(p.r + std::log(e2 + 0.5 * (1.0 - e2) * one_minus_cos));
}

}  // namespace brownloop
