#include "brownloop/evolve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "brownloop/quadrature.hpp"

namespace brownloop {

namespace {

constexpr double kPi = std::numbers::pi;

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive");
}

// Runs fn(i) for i in [0, count) on contiguous blocks; results must be written by index.
template <class F>
void parallel_for(std::size_t count, int workers, F&& fn) {
  workers = std::clamp(workers, 1, 256);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(count, static_cast<std::size_t>(w) * chunk);
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo == hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

double r_over_sinh(double r) {
  if (r < 1e-4) return 1.0 - r * r / 6.0;
  if (r > 700.0) return 0.0;
  return r / std::sinh(r);
}

// e^{rho^2 t} h_t(d) and phi0(d) as functions of distance at a fixed time.
class DistanceKernel {
 public:
  DistanceKernel(const HyperbolicModel& m, double t, double r_max)
      : m_(m),
        t_(t),
        closed_(m.dimension() == 3),
        prefactor_(std::pow(4.0 * kPi * t, -1.5)),
        profile_(KernelProfile::shifted_heat(m, t, std::max(r_max, 1.0))) {}

  void eval(double d, double& k, double& p) const {
    if (closed_) {
      p = r_over_sinh(d);
      k = prefactor_ * p * std::exp(-d * d / (4.0 * t_));
      return;
    }
    const double lp = log_phi0(m_, d);
    p = std::exp(lp);
    if (d <= profile_.r_max())
      k = std::exp(profile_.log_remainder(d) + lp - d * d / (4.0 * t_));
    else
      k = std::exp(log_shifted_heat_kernel(m_, t_, d));
  }

  double phi(double d) const { return closed_ ? r_over_sinh(d) : std::exp(log_phi0(m_, d)); }

 private:
  const HyperbolicModel& m_;
  double t_;
  bool closed_;
  double prefactor_;
  KernelProfile profile_;
};

// Quadrature of the data against phi0 dmu: either radial (r', weight) pairs, to be
// combined with an angular average, or cells of the support ball.
struct DataNodes {
  bool radial = false;
  std::vector<double> r;
  std::vector<std::array<double, 4>> y;
  std::vector<double> w;
  double reach = 0.0;  // max |y| over the nodes
};

DataNodes radial_nodes(const HyperbolicModel& m, const InitialData& f, double t) {
  DataNodes out;
  out.radial = true;
  const double top = f.truncation_radius();
  const double width = std::min(1.0, 0.5 * std::sqrt(t));
  const int panels = std::max(2, static_cast<int>(std::ceil(top / width)));
  const NodeSet nodes = panel_nodes(0.0, top, panels, 16);
  const int n = m.dimension();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double r = nodes.x[i];
    const double fr = f.profile(r);
    if (fr == 0.0) continue;
    const double logv = log_phi0(m, r) + (n - 1) * std::log(std::sinh(r));
    out.r.push_back(r);
    out.w.push_back(nodes.w[i] * fr * std::exp(logv) * m.sphere_area());
  }
  // Drop the far tail once it is below double precision of the total weight.
  double total = 0.0;
  for (double w : out.w) total += std::abs(w);
  std::size_t keep = out.w.size();
  while (keep > 1 && std::abs(out.w[keep - 1]) < 1e-17 * total) --keep;
  out.r.resize(keep);
  out.w.resize(keep);
  out.reach = out.r.empty() ? 0.0 : out.r.back();
  return out;
}

DataNodes cell_nodes(const HyperbolicModel& m, const InitialData& f, const CellResolution& res) {
  DataNodes out;
  for (const BallCell& c : ball_cells(m.dimension(), f.support_ball(), res)) {
    const double fv = f.profile(c.s);
    if (fv == 0.0) continue;
    out.y.push_back(c.hyper);
    out.w.push_back(c.weight * fv * std::exp(log_phi0(m, c.point.r)));
    out.reach = std::max(out.reach, c.point.r);
  }
  return out;
}

// Normalized angular average nodes over the angle gamma in [0, pi] between g and y;
// returned as (1 - cos gamma)/2 and weights summing to 1.
struct AngleNodes {
  std::vector<double> half_versine;
  std::vector<double> w;
};

AngleNodes angle_nodes(int dimension, double t, double radius, double reach) {
  std::vector<double> breaks{0.0};
  const double spread = radius * reach;
  const double scale = spread > 0.0 ? 2.0 * std::sqrt(t / spread) : kPi;
  if (scale >= 0.25 * kPi) {
    for (int i = 1; i <= 4; ++i) breaks.push_back(0.25 * kPi * i);
  } else {
    for (double x = scale; x < kPi; x *= 2.0) breaks.push_back(x);
    breaks.push_back(kPi);
  }
  const NodeSet g = breakpoint_nodes(breaks, 16);
  AngleNodes out;
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = dimension == 3 ? g.w[i] * std::sin(g.x[i]) : g.w[i];
    out.half_versine.push_back(std::pow(std::sin(0.5 * g.x[i]), 2));
    out.w.push_back(w);
    total += w;
  }
  for (double& w : out.w) w /= total;
  return out;
}

struct PointValue {
  double u = 0.0;
  double mass = 0.0;
  double base = 0.0;
  double diff = 0.0;
};

struct Context {
  const HyperbolicModel& model;
  double t;
  DataNodes data;
  DistanceKernel kernel;
};

PointValue evaluate(const Context& c, const SpacePoint& g, bool with_kernel) {
  const int n = c.model.dimension();
  double u_sum = 0.0;
  double m_sum = 0.0;
  double k = 0.0;
  double p = 0.0;
  if (c.data.radial) {
    const double big_r = g.r;
    if (big_r == 0.0) {
      for (std::size_t a = 0; a < c.data.r.size(); ++a) {
        c.kernel.eval(c.data.r[a], k, p);
        u_sum += c.data.w[a] * k;
        m_sum += c.data.w[a] * p;
      }
    } else {
      const AngleNodes ang = angle_nodes(n, c.t, big_r, c.data.reach);
      const double sh_big = std::sinh(std::min(big_r, 300.0));
      for (std::size_t a = 0; a < c.data.r.size(); ++a) {
        const double r = c.data.r[a];
        const bool stable = big_r + r < 300.0;
        const double gap = std::sinh(0.5 * (big_r - r));
        const double cross = sh_big * std::sinh(r);
        double uu = 0.0;
        double mm = 0.0;
        for (std::size_t j = 0; j < ang.w.size(); ++j) {
          const double d = stable ? 2.0 * std::asinh(std::sqrt(gap * gap + cross * ang.half_versine[j]))
                                  : distance_from_chord(big_r, r, 2.0 * std::sqrt(ang.half_versine[j]));
          if (with_kernel) {
            c.kernel.eval(d, k, p);
            uu += ang.w[j] * k;
          } else {
            p = c.kernel.phi(d);
          }
          mm += ang.w[j] * p;
        }
        u_sum += c.data.w[a] * uu;
        m_sum += c.data.w[a] * mm;
      }
    }
  } else {
    const auto gh = hyperboloid(n, g);
    for (std::size_t i = 0; i < c.data.y.size(); ++i) {
      const auto& y = c.data.y[i];
      const double dot = gh[0] * y[0] - gh[1] * y[1] - gh[2] * y[2] - gh[3] * y[3];
      const double d = std::acosh(std::max(1.0, dot));
      if (with_kernel) {
        c.kernel.eval(d, k, p);
        u_sum += c.data.w[i] * k;
      } else {
        p = c.kernel.phi(d);
      }
      m_sum += c.data.w[i] * p;
    }
  }
  double kg = 0.0;
  double pg = 0.0;
  c.kernel.eval(g.r, kg, pg);
  if (!with_kernel) pg = c.kernel.phi(g.r);
  PointValue out;
  out.u = u_sum / pg;
  out.mass = m_sum / pg;
  out.base = kg / pg;
  out.diff = out.u - out.mass * out.base;
  return out;
}

void require_evolvable(const RelativizedSpace& s, const InitialData& f) {
  if (!f.compact()) {
    const Admissibility a = admissibility_check(s, f);
    if (!a.admissible) throw std::invalid_argument("initial data '" + f.name() + "' is not admissible");
  }
  if (f.symmetry() == Symmetry::general)
    throw std::invalid_argument("evolution supports radial and axially symmetric data only");
}

double effective_reach(const InitialData& f) { return f.compact() ? f.support_radius() : std::min(f.truncation_radius(), 16.0); }

Context make_context(const RelativizedSpace& s, const InitialData& f, double t, double r_max, const EvolveOptions& o) {
  const HyperbolicModel& m = s.model();
  DataNodes nodes = f.symmetry() == Symmetry::radial ? radial_nodes(m, f, t) : cell_nodes(m, f, o.cells);
  const double reach = nodes.reach;
  return Context{m, t, std::move(nodes), DistanceKernel(m, t, r_max + reach + 1.0)};
}

std::vector<PointValue> evaluate_all(const Context& c, const std::vector<SpacePoint>& points, int workers,
                                     bool with_kernel = true) {
  std::vector<PointValue> out(points.size());
  parallel_for(points.size(), workers, [&](std::size_t i) { out[i] = evaluate(c, points[i], with_kernel); });
  return out;
}

struct OuterGrid {
  std::vector<SpacePoint> points;
  std::vector<double> weights;  // dmu~ weights
  double radius = 0.0;
};

OuterGrid outer_grid(const RelativizedSpace& s, const InitialData& f, double t, const EvolveOptions& o) {
  OuterGrid g;
  g.radius = 6.0 * std::sqrt(t) + effective_reach(f);
  const NodeSet radial = panel_nodes(0.0, g.radius, o.outer_panels, o.outer_nodes);
  const double area = s.model().sphere_area();
  if (f.symmetry() == Symmetry::radial) {
    for (std::size_t i = 0; i < radial.size(); ++i) {
      g.points.push_back({radial.x[i], 0.0, 0.0});
      g.weights.push_back(radial.w[i] * s.density(radial.x[i]));
    }
    return g;
  }
  const int n = s.dimension();
  const NodeSet angular = n == 3 ? gauss_nodes(-1.0, 1.0, o.outer_angles) : gauss_nodes(0.0, kPi, o.outer_angles);
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double radial_w = radial.w[i] * s.density(radial.x[i]) / area;
    for (std::size_t j = 0; j < angular.size(); ++j) {
      const double theta = n == 3 ? std::acos(angular.x[j]) : angular.x[j];
      const double ang_w = n == 3 ? 2.0 * kPi * angular.w[j] : 2.0 * angular.w[j];
      g.points.push_back({radial.x[i], theta, 0.0});
      g.weights.push_back(radial_w * ang_w);
    }
  }
  return g;
}

std::vector<SpacePoint> sup_grid(const InitialData& f, double t, const EpsilonSchedule& eps, int dimension) {
  const double top = 1.5 * std::sqrt(t) / eps(t);
  std::vector<double> radii{0.0};
  for (double r : geomspace(1e-2, std::max(top, 2e-2), 100)) radii.push_back(r);
  for (double r : linspace(0.0, 4.0 * std::sqrt(t), 81)) radii.push_back(r);
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  std::vector<SpacePoint> pts;
  if (f.symmetry() == Symmetry::radial) {
    for (double r : radii) pts.push_back({r, 0.0, 0.0});
    return pts;
  }
  (void)dimension;
  for (double r : radii) {
    if (r == 0.0) {
      pts.push_back({0.0, 0.0, 0.0});
      continue;
    }
    for (double th : linspace(0.0, kPi, 13)) pts.push_back({r, th, 0.0});
  }
  return pts;
}

double max_radius(const std::vector<SpacePoint>& pts) {
  double r = 0.0;
  for (const SpacePoint& p : pts) r = std::max(r, p.r);
  return r;
}

double conjugate(double p) { return p / (p - 1.0); }

struct DistanceSet {
  double l1 = 0.0;
  std::vector<double> lp;
  double max_mass = 0.0;
  double radius = 0.0;
};

DistanceSet integrate_distances(const std::vector<PointValue>& vals, const OuterGrid& grid,
                                const std::vector<double>& p_list) {
  DistanceSet out;
  out.radius = grid.radius;
  std::vector<double> terms(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) {
    terms[i] = grid.weights[i] * std::abs(vals[i].diff);
    out.max_mass = std::max(out.max_mass, std::abs(vals[i].mass));
  }
  out.l1 = pairwise_sum(terms);
  for (double p : p_list) {
    for (std::size_t i = 0; i < vals.size(); ++i) terms[i] = grid.weights[i] * std::pow(std::abs(vals[i].diff), p);
    out.lp.push_back(std::pow(pairwise_sum(terms), 1.0 / p));
  }
  return out;
}

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) throw std::invalid_argument("p must satisfy 1 < p < infinity");
}

}  // namespace

// --- mass ----------------------------------------------------------------

double mass_function(const RelativizedSpace& s, const InitialData& f, const SpacePoint& g) {
  g.validate(s.dimension());
  if (f.is_zero()) return 0.0;
  require_evolvable(s, f);
  const HyperbolicModel& m = s.model();
  const bool cells = f.compact();
  const CellResolution res = m.dimension() == 2 ? CellResolution{40, 0, 64} : CellResolution{32, 32, 32};
  DataNodes nodes = cells ? cell_nodes(m, f, res) : radial_nodes(m, f, 1.0);
  const Context c{m, 1.0, std::move(nodes), DistanceKernel(m, 1.0, 1.0)};
  return evaluate(c, g, false).mass;
}

double mass_constant_radial(const RelativizedSpace& s, const InitialData& f) {
  if (f.symmetry() != Symmetry::radial) throw std::invalid_argument("mass constant requires radial data");
  if (f.is_zero()) return 0.0;
  auto integrand = [&](double r) { return r == 0.0 ? 0.0 : f.profile(r) * s.density(r); };
  const double top = f.truncation_radius();
  const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * top)));
  if (f.compact()) return integrate_panels(integrand, 0.0, top, panels, 24);
  // Dyadic tail test on [top/4, top/2] and [top/2, top].
  const double head = integrate_panels(integrand, 0.0, 0.25 * top, panels, 24);
  const double mid = integrate_panels(integrand, 0.25 * top, 0.5 * top, panels, 24);
  const double tail = integrate_panels(integrand, 0.5 * top, top, panels, 24);
  const double total = head + mid + tail;
  if (!std::isfinite(total) || (std::abs(tail) > 1e-9 * std::abs(total) && std::abs(tail) >= 0.5 * std::abs(mid)))
    throw std::invalid_argument("relativized mass integral diverges");
  return total;
}

double MassValue::max_abs() const {
  if (constant) return std::abs(value);
  double best = 0.0;
  for (double v : values) best = std::max(best, std::abs(v));
  return best;
}

MassValue mass_values(const RelativizedSpace& s, const InitialData& f, const std::vector<SpacePoint>& points) {
  MassValue out;
  out.points = points;
  if (f.symmetry() == Symmetry::radial) {
    out.constant = true;
    out.value = mass_constant_radial(s, f);
  }
  for (const SpacePoint& g : points) out.values.push_back(mass_function(s, f, g));
  return out;
}

// --- evolution -----------------------------------------------------------

std::vector<double> evolve(const RelativizedSpace& s, const InitialData& f, double t,
                           const std::vector<SpacePoint>& points, const EvolveOptions& opts) {
  check_time(t);
  for (const SpacePoint& p : points) p.validate(s.dimension());
  if (f.is_zero()) return std::vector<double>(points.size(), 0.0);
  require_evolvable(s, f);
  const Context c = make_context(s, f, t, max_radius(points), opts);
  std::vector<double> out;
  for (const PointValue& v : evaluate_all(c, points, opts.worker_count)) out.push_back(v.u);
  return out;
}

std::vector<double> evolve_difference(const RelativizedSpace& s, const InitialData& f, double t,
                                      const std::vector<SpacePoint>& points, const EvolveOptions& opts) {
  check_time(t);
  for (const SpacePoint& p : points) p.validate(s.dimension());
  if (f.is_zero()) return std::vector<double>(points.size(), 0.0);
  require_evolvable(s, f);
  const Context c = make_context(s, f, t, max_radius(points), opts);
  std::vector<double> out;
  for (const PointValue& v : evaluate_all(c, points, opts.worker_count)) out.push_back(v.diff);
  return out;
}

double sup_scaling_exponent(const HyperbolicModel& m) {
  const Dimensions d = dimensions(m.root_datum());
  return 0.25 * (d.nu + d.n);
}

double l1_distance(const RelativizedSpace& s, const InitialData& f, double t, const EvolveOptions& opts) {
  check_time(t);
  if (f.is_zero()) return 0.0;
  require_evolvable(s, f);
  const OuterGrid grid = outer_grid(s, f, t, opts);
  const Context c = make_context(s, f, t, grid.radius, opts);
  return integrate_distances(evaluate_all(c, grid.points, opts.worker_count), grid, {}).l1;
}

double lp_scaled_distance(const RelativizedSpace& s, const InitialData& f, double t, double p,
                          const EvolveOptions& opts) {
  check_time(t);
  check_p(p);
  if (f.is_zero()) return 0.0;
  require_evolvable(s, f);
  const OuterGrid grid = outer_grid(s, f, t, opts);
  const Context c = make_context(s, f, t, grid.radius, opts);
  const DistanceSet d = integrate_distances(evaluate_all(c, grid.points, opts.worker_count), grid, {p});
  return std::pow(t, sup_scaling_exponent(s.model()) / conjugate(p)) * d.lp.front();
}

double linf_scaled_distance(const RelativizedSpace& s, const InitialData& f, double t, const EvolveOptions& opts) {
  check_time(t);
  if (f.is_zero()) return 0.0;
  require_evolvable(s, f);
  const std::vector<SpacePoint> pts = sup_grid(f, t, opts.eps, s.dimension());
  const Context c = make_context(s, f, t, max_radius(pts), opts);
  double best = 0.0;
  for (const PointValue& v : evaluate_all(c, pts, opts.worker_count)) best = std::max(best, std::abs(v.diff));
  return std::pow(t, sup_scaling_exponent(s.model())) * best;
}

// --- admissibility and concentration ---------------------------------------

Admissibility admissibility_check(const RelativizedSpace& s, const InitialData& f) {
  const HyperbolicModel& m = s.model();
  const int n = m.dimension();
  Admissibility out;
  if (f.is_zero()) {
    out.admissible = true;
    return out;
  }
  // Angular average of |f| at radius r.
  const NodeSet ring = trapezoid_periodic(0.0, 2.0 * kPi, 16);
  const NodeSet polar = gauss_nodes(-1.0, 1.0, 8);
  auto abs_avg = [&](double r) {
    if (f.symmetry() == Symmetry::radial) return std::abs(f(n, {r, 0.0, 0.0}));
    double acc = 0.0;
    if (n == 2) {
      for (std::size_t i = 0; i < ring.size(); ++i) acc += ring.w[i] * std::abs(f(n, {r, ring.x[i], 0.0}));
      return acc / (2.0 * kPi);
    }
    for (std::size_t j = 0; j < polar.size(); ++j)
      for (std::size_t i = 0; i < 8; ++i)
        acc += polar.w[j] * std::abs(f(n, {r, std::acos(polar.x[j]), 2.0 * kPi * i / 8.0}));
    return acc / 16.0;
  };
  auto integrand = [&](double r) {
    if (r == 0.0) return 0.0;
    const double a = abs_avg(r);
    if (a == 0.0) return 0.0;
    return a * std::exp(log_phi0(m, r) + m.rho() * r + (n - 1) * std::log(std::sinh(r)) + std::log(m.sphere_area()));
  };
  const double top = 200.0;
  if (f.compact() && f.support_radius() <= top) {
    const double xi = f.support_radius();
    out.value = integrate_panels(integrand, 0.0, xi, std::max(4, static_cast<int>(std::ceil(2.0 * xi))), 16);
    out.admissible = std::isfinite(out.value);
    return out;
  }
  const double head = integrate_panels(integrand, 0.0, 50.0, 100, 16);
  const double mid = integrate_panels(integrand, 50.0, 100.0, 100, 16);
  const double tail = integrate_panels(integrand, 100.0, top, 200, 16);
  if (!std::isfinite(head + mid + tail)) {
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.tail_ratio = mid > 0.0 ? tail / mid : (tail > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  if (out.tail_ratio < 0.75) {
    out.admissible = true;
    out.value = head + mid + tail + tail * out.tail_ratio / (1.0 - out.tail_ratio);
  } else {
    out.value = std::numeric_limits<double>::infinity();
    out.inconclusive = out.tail_ratio < 1.0;
  }
  return out;
}

Concentration concentration_outside_omega(const RelativizedSpace& s, double t, const EpsilonSchedule& eps) {
  check_time(t);
  const RegionRadii rr = region_radii(t, eps);
  if (rr.degenerate()) return {1.0, true};
  auto integrand = [&](double r) {
    return r == 0.0 ? 0.0 : std::exp(log_relativized_kernel_origin(s, t, r) + s.log_density(r));
  };
  const double st = std::sqrt(t);
  const double width = std::min(1.0, 0.25 * st);
  const int inner_panels = std::max(1, static_cast<int>(std::ceil(rr.inner / width)));
  const double far = rr.outer + 12.0 * st + 10.0;
  const int outer_panels = std::max(1, static_cast<int>(std::ceil((far - rr.outer) / width)));
  const double value = integrate_panels(integrand, 0.0, rr.inner, inner_panels, 24) +
                       integrate_panels(integrand, rr.outer, far, std::min(outer_panels, 512), 24);
  return {value, false};
}

TailSup linf_outside_R(const RelativizedSpace& s, double t, const EpsilonSchedule& eps) {
  check_time(t);
  const double e = eps(t);
  TailSup out;
  out.degenerate = e >= 1.0;
  out.boundary = out.degenerate ? std::sqrt(t) : std::sqrt(t) / e;
  double best = -std::numeric_limits<double>::infinity();
  for (double dr : linspace(0.0, 10.0 * std::sqrt(t), 401))
    best = std::max(best, log_relativized_kernel_origin(s, t, out.boundary + dr));
  out.value = std::exp(sup_scaling_exponent(s.model()) * std::log(t) + best);
  return out;
}

// --- experiment ------------------------------------------------------------

ConvergenceReport run_convergence_experiment(const RelativizedSpace& s, const InitialData& f,
                                             const std::vector<double>& t_grid, const std::vector<double>& p_list,
                                             const EvolveOptions& opts) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    check_time(t_grid[i]);
    if (i > 0 && !(t_grid[i] > t_grid[i - 1])) throw std::invalid_argument("t grid must be strictly increasing");
  }
  for (double p : p_list) check_p(p);
  ConvergenceReport report;
  report.model = s.model().name();
  report.data = f.name();
  report.p_list = p_list;
  if (t_grid.empty()) return report;
  if (!f.is_zero()) require_evolvable(s, f);
  const double expo = sup_scaling_exponent(s.model());
  for (double t : t_grid) {
    const auto start = std::chrono::steady_clock::now();
    ConvergenceRow row;
    row.t = t;
    if (f.is_zero()) {
      row.lp.assign(p_list.size(), 0.0);
      report.rows.push_back(row);
      continue;
    }
    const OuterGrid grid = outer_grid(s, f, t, opts);
    const std::vector<SpacePoint> sup_pts = sup_grid(f, t, opts.eps, s.dimension());
    const Context c = make_context(s, f, t, std::max(grid.radius, max_radius(sup_pts)), opts);
    const DistanceSet d = integrate_distances(evaluate_all(c, grid.points, opts.worker_count), grid, p_list);
    double best = 0.0;
    for (const PointValue& v : evaluate_all(c, sup_pts, opts.worker_count)) best = std::max(best, std::abs(v.diff));
    row.l1 = d.l1;
    row.linf_scaled = std::pow(t, expo) * best;
    for (std::size_t k = 0; k < p_list.size(); ++k)
      row.lp.push_back(std::pow(t, expo / conjugate(p_list[k])) * d.lp[k]);
    row.mass = evaluate(c, SpacePoint::origin(), false).mass;
    row.tail_bound = 2.0 * d.max_mass * relativized_tail_bound(s, t, grid.radius - effective_reach(f));
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace brownloop
