#include "brownloop/doob.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "brownloop/quadrature.hpp"

namespace brownloop {

namespace {

constexpr double kPi = std::numbers::pi;

double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive");
}

// Derivatives on a uniform grid: central in the interior, second-order one-sided at the ends.
void differentiate(const std::vector<double>& v, double h, std::vector<double>& d1, std::vector<double>& d2) {
  const std::size_t n = v.size();
  d1.assign(n, 0.0);
  d2.assign(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d1[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    d2[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
  }
  d1[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
  d1[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  d2[n - 1] = (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (h * h);
}

}  // namespace

double RelativizedSpace::log_density(double r) const {
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  const int n = dimension();
  if (n == 3) return std::log(4.0 * kPi) + 2.0 * std::log(r);
  return 2.0 * log_phi0(*model_, r) + (n - 1) * log_sinh(r) + std::log(model_->sphere_area());
}

double RelativizedSpace::density(double r) const {
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (r == 0.0) return 0.0;
  return std::exp(log_density(r));
}

double log_relativized_kernel_origin(const RelativizedSpace& s, double t, double r) {
  check_time(t);
  if (s.dimension() == 3) return -1.5 * std::log(4.0 * kPi * t) - r * r / (4.0 * t);
  return log_shifted_heat_kernel(s.model(), t, r) - log_phi0(s.model(), r);
}

double relativized_kernel_origin(const RelativizedSpace& s, double t, double r) {
  return std::exp(log_relativized_kernel_origin(s, t, r));
}

double relativized_kernel(const RelativizedSpace& s, double t, const SpacePoint& x, const SpacePoint& y) {
  check_time(t);
  const HyperbolicModel& m = s.model();
  const double d = hyperbolic_distance(m, x, y);
  return std::exp(log_shifted_heat_kernel(m, t, d) - log_phi0(m, x.r) - log_phi0(m, y.r));
}

double relativized_tail_bound(const RelativizedSpace& s, double t, double r0) {
  check_time(t);
  r0 = std::max(r0, 0.0);
  if (s.dimension() == 3) {
    // Exact Maxwell tail of the radial law.
    const double x = r0 / std::sqrt(2.0 * t);
    return std::erfc(x / std::sqrt(2.0)) + std::sqrt(2.0 / kPi) * x * std::exp(-0.5 * x * x);
  }
  const HyperbolicModel& m = s.model();
  const double c = m.kernel_constants().upper;
  return integrate_panels(
      [&](double r) {
        if (r == 0.0) return 0.0;
        return c * std::exp(m.rho_sq() * t - log_phi0(m, r) + s.log_density(r)) * heat_kernel_envelope_shape(m, t, r);
      },
      r0, r0 + 20.0 * std::sqrt(t) + 10.0, 32, 24);
}

NormalizationResult check_normalization(const RelativizedSpace& s, double t, double r_max) {
  check_time(t);
  const double minimum = 6.0 * std::sqrt(t) + 10.0;
  // 6 sqrt t is only ~4.2 standard deviations of the radial law; the default
  // goes to ~7 so the truncated value itself is accurate at large t.
  if (r_max == 0.0) r_max = 10.0 * std::sqrt(t) + 10.0;
  if (r_max < minimum) throw std::invalid_argument("normalization truncation r_max must be >= 6 sqrt(t) + 10");
  const double width = std::min(1.0, 0.25 * std::sqrt(t));
  const int panels = static_cast<int>(std::ceil(r_max / width));
  NormalizationResult out;
  out.r_max = r_max;
  out.value = integrate_panels(
      [&](double r) { return r == 0.0 ? 0.0 : std::exp(log_relativized_kernel_origin(s, t, r) + s.log_density(r)); },
      0.0, r_max, panels, 24);
  out.tail_bound = relativized_tail_bound(s, t, r_max);
  return out;
}

double relativized_drift(const RelativizedSpace& s, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("drift is singular at r = 0");
  const int n = s.dimension();
  return (n - 1) / std::tanh(r) + 2.0 * log_phi0_derivative(s.model(), r);
}

GeneratorResult relativized_generator_apply(const RelativizedSpace& s, const std::function<double(double)>& f,
                                            const RadialGrid& grid) {
  if (grid.intervals - 1 < 64) throw std::invalid_argument("generator grid needs at least 64 interior nodes");
  if (!(grid.r_min > 0.0) || !(grid.r_max > grid.r_min))
    throw std::invalid_argument("generator grid needs 0 < r_min < r_max");
  const HyperbolicModel& m = s.model();
  const int n = m.dimension();
  const double h = grid.spacing();
  const std::size_t count = static_cast<std::size_t>(grid.intervals) + 1;
  GeneratorResult out;
  out.spacing = h;
  out.r.resize(count);
  std::vector<double> fv(count), pf(count), phi(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = grid.r_min + h * static_cast<double>(i);
    out.r[i] = r;
    fv[i] = f(r);
    phi[i] = phi0(m, r);
    pf[i] = phi[i] * fv[i];
  }
  std::vector<double> f1, f2, p1, p2;
  differentiate(fv, h, f1, f2);
  differentiate(pf, h, p1, p2);
  out.conjugated.resize(count);
  out.direct.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = out.r[i];
    const double coth = 1.0 / std::tanh(r);
    out.conjugated[i] = (p2[i] + (n - 1) * coth * p1[i] + m.rho_sq() * pf[i]) / phi[i];
    out.direct[i] = f2[i] + ((n - 1) * coth + 2.0 * log_phi0_derivative(m, r)) * f1[i];
    out.max_discrepancy = std::max(out.max_discrepancy, std::abs(out.conjugated[i] - out.direct[i]));
  }
  return out;
}

SemigroupResult semigroup_identity_check(const RelativizedSpace& s, double t, const InitialData& f) {
  check_time(t);
  if (f.symmetry() != Symmetry::radial || !f.compact())
    throw std::invalid_argument("semigroup check needs radial compactly supported data");
  SemigroupResult out;
  if (f.is_zero()) return out;
  const HyperbolicModel& m = s.model();
  const int n = m.dimension();
  const double xi = f.support_radius();
  const NodeSet nodes = panel_nodes(0.0, xi, std::max(4, static_cast<int>(std::ceil(4.0 * xi))), 24);
  std::vector<double> lhs(nodes.size()), rhs(nodes.size());
  const double shift = std::exp(m.rho_sq() * t);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes.x[i];
    const double fr = f.profile(r);
    lhs[i] = nodes.w[i] * relativized_kernel_origin(s, t, r) * fr * s.density(r);
    const double h = heat_kernel(m, t, r);
    rhs[i] = nodes.w[i] * h * phi0(m, r) * fr * m.sphere_area() * std::pow(std::sinh(r), n - 1);
  }
  out.relativized = pairwise_sum(lhs);
  out.conjugated = shift / phi0(m, 0.0) * pairwise_sum(rhs);
  out.residual = std::abs(out.relativized - out.conjugated);
  return out;
}

double chapman_kolmogorov_residual(const RelativizedSpace& sp, double s, double t, double y_radius) {
  check_time(s);
  check_time(t);
  const HyperbolicModel& m = sp.model();
  const int n = m.dimension();
  const double r_top = y_radius + 6.0 * std::sqrt(s + t) + 10.0;
  const NodeSet radial = panel_nodes(0.0, r_top, static_cast<int>(std::ceil(4.0 * r_top)), 24);
  // Average over the angle gamma between z and y.
  const NodeSet angle = n == 3 ? panel_nodes(-1.0, 1.0, 4, 24) : panel_nodes(0.0, kPi, 4, 24);
  const double log_phi_y = log_phi0(m, y_radius);
  const KernelProfile kernel = KernelProfile::shifted_heat(m, t, r_top + y_radius);
  double acc = 0.0;
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double r = radial.x[i];
    if (r == 0.0) continue;
    const double left = log_relativized_kernel_origin(sp, s, r) + sp.log_density(r);
    double avg = 0.0;
    for (std::size_t j = 0; j < angle.size(); ++j) {
      const double c = n == 3 ? angle.x[j] : std::cos(angle.x[j]);
      const double d = distance_from_cosine(r, y_radius, c);
      avg += angle.w[j] * std::exp(left + kernel.log_value(d) - log_phi0(m, r) - log_phi_y);
    }
    avg /= n == 3 ? 2.0 : kPi;
    acc += radial.w[i] * avg;
  }
  const double target = std::exp(log_shifted_heat_kernel(m, s + t, y_radius) - log_phi_y);
  return (acc - target) / target;
}

SupNorm relativized_sup_norm(const RelativizedSpace& s, double t) {
  check_time(t);
  const double top = 6.0 * std::sqrt(t) + 10.0;
  const std::vector<double> grid = linspace(0.0, top, 801);
  SupNorm best{-std::numeric_limits<double>::infinity(), 0.0};
  std::size_t idx = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double v = log_relativized_kernel_origin(s, t, grid[i]);
    if (v > best.value) {
      best = {v, grid[i]};
      idx = i;
    }
  }
  // Golden-section refinement inside the bracketing cell pair.
  double a = grid[idx == 0 ? 0 : idx - 1];
  double b = grid[std::min(idx + 1, grid.size() - 1)];
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 80 && b - a > 1e-12 * (1.0 + b); ++it) {
    const double x1 = b - g * (b - a);
    const double x2 = a + g * (b - a);
    if (log_relativized_kernel_origin(s, t, x1) >= log_relativized_kernel_origin(s, t, x2))
      b = x2;
    else
      a = x1;
  }
  const double mid = 0.5 * (a + b);
  const double v = log_relativized_kernel_origin(s, t, mid);
  if (v > best.value) best = {v, mid};
  return {std::exp(best.value), best.argmax};
}

}  // namespace brownloop
