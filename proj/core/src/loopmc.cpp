#include "brownloop/loopmc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "brownloop/philox.hpp"
#include "brownloop/quadrature.hpp"

namespace brownloop {

namespace {

constexpr double kPi = std::numbers::pi;

enum class Process { loop, brownian };

double drift_of(Process p, const HyperbolicModel& m, double r) {
  return p == Process::loop ? loop_drift(m, r) : brownian_drift(m, r);
}

// Linear coefficient c of drift = (n-1)/r + c r + O(r^3) near the pole.
double pole_correction(Process p, const HyperbolicModel& m) {
  const int n = m.dimension();
  const double flat = (n - 1) / 3.0;
  return p == Process::loop ? flat - 2.0 * m.rho_sq() / n : flat;
}

struct PathResult {
  double radius = 0.0;
  double drift_sum = 0.0;
  std::int64_t drift_count = 0;
  std::int64_t reflections = 0;
};

PathResult run_path(Process proc, const HyperbolicModel& m, const MCConfig& cfg, const PhiloxKey& key,
                    std::int64_t path, double r_floor) {
  const int n = m.dimension();
  const std::int64_t steps = cfg.steps();
  const double h = cfg.t_end / static_cast<double>(steps);
  const double sigma = std::sqrt(2.0 * h);
  const double threshold = sigma;
  const double correction = pole_correction(proc, m);
  const auto lo = static_cast<std::uint32_t>(path);
  const auto hi = static_cast<std::uint32_t>(static_cast<std::uint64_t>(path) >> 32);
  PathResult out;
  double r = cfg.r0;
  for (std::int64_t k = 0; k < steps; ++k) {
    const auto step = static_cast<std::uint32_t>(k);
    const std::array<double, 2> z = normal_pair(philox4x32({step, lo, hi, 0u}, key));
    if (r < threshold) {
      // Flat Bessel-n move from r, exact for the (n-1)/r part of the drift.
      double sq = std::pow(r + sigma * z[0], 2) + std::pow(sigma * z[1], 2);
      if (n == 3) {
        const std::array<double, 2> w = normal_pair(philox4x32({step, lo, hi, 1u}, key));
        sq += std::pow(sigma * w[0], 2);
      }
      r = std::sqrt(sq) + correction * r * h;
      continue;
    }
    const double b = drift_of(proc, m, r);
    if (r > r_floor) {
      out.drift_sum += b;
      ++out.drift_count;
    }
    r += b * h + sigma * z[0];
    if (r < 0.0) {
      r = -r;
      ++out.reflections;
    }
  }
  out.radius = r;
  return out;
}

std::vector<PathResult> run_paths(Process proc, const HyperbolicModel& m, const MCConfig& cfg, double r_floor) {
  cfg.validate();
  const PhiloxKey key = philox_key(cfg.seed);
  const auto count = static_cast<std::size_t>(cfg.n_paths);
  std::vector<PathResult> out(count);
  const int workers = std::max(1, cfg.worker_count);
  auto block = [&](std::size_t a, std::size_t b) {
    for (std::size_t i = a; i < b; ++i) out[i] = run_path(proc, m, cfg, key, static_cast<std::int64_t>(i), r_floor);
  };
  if (workers == 1) {
    block(0, count);
    return out;
  }
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const std::size_t a = std::min(count, static_cast<std::size_t>(w) * chunk);
    const std::size_t b = std::min(count, a + chunk);
    if (a < b) pool.emplace_back(block, a, b);
  }
  for (std::thread& th : pool) th.join();
  return out;
}

EmpiricalSample to_sample(const std::vector<PathResult>& paths, const MCConfig& cfg) {
  EmpiricalSample e;
  e.steps = cfg.steps();
  e.dt = cfg.t_end / static_cast<double>(e.steps);
  e.radii.reserve(paths.size());
  for (const PathResult& p : paths) {
    e.radii.push_back(p.radius);
    e.reflections += p.reflections;
  }
  return e;
}

double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

}  // namespace

void MCConfig::validate() const {
  if (n_paths < 1000) throw std::invalid_argument("n_paths must be at least 1000");
  if (!(dt > 0.0) || dt > 1e-2) throw std::invalid_argument("dt must be in (0, 1e-2]");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw std::invalid_argument("t_end must be positive");
  if (!(r0 >= 0.0) || !std::isfinite(r0)) throw std::invalid_argument("r0 must be >= 0");
  if (worker_count < 1) throw std::invalid_argument("worker_count must be >= 1");
}

std::int64_t MCConfig::steps() const {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(t_end / dt - 1e-9)));
}

double EmpiricalSample::mean() const {
  if (radii.empty()) throw std::invalid_argument("empty sample");
  return pairwise_sum(radii) / static_cast<double>(radii.size());
}

double EmpiricalSample::mean_square() const {
  if (radii.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> sq(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) sq[i] = radii[i] * radii[i];
  return pairwise_sum(sq) / static_cast<double>(radii.size());
}

std::vector<std::int64_t> EmpiricalSample::histogram(int bins, double r_max) const {
  if (bins < 1 || !(r_max > 0.0)) throw std::invalid_argument("histogram needs bins >= 1 and r_max > 0");
  std::vector<std::int64_t> h(static_cast<std::size_t>(bins), 0);
  for (double r : radii) {
    if (r > r_max) continue;
    const int b = std::min(bins - 1, static_cast<int>(r / r_max * bins));
    ++h[static_cast<std::size_t>(b)];
  }
  return h;
}

double EmpiricalSample::cdf(double x) const {
  if (radii.empty()) throw std::invalid_argument("empty sample");
  const auto c = std::count_if(radii.begin(), radii.end(), [x](double r) { return r <= x; });
  return static_cast<double>(c) / static_cast<double>(radii.size());
}

double loop_drift(const HyperbolicModel& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("loop drift is singular at r = 0");
  const int n = m.dimension();
  if (n == 3) return 2.0 / r;
  if (r < 1e-3) return (n - 1) / r + pole_correction(Process::loop, m) * r;
  return (n - 1) / std::tanh(r) + 2.0 * log_phi0_derivative(m, r);
}

double brownian_drift(const HyperbolicModel& m, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("Brownian drift is singular at r = 0");
  return (m.dimension() - 1) / std::tanh(r);
}

EmpiricalSample simulate_loop(const HyperbolicModel& m, const MCConfig& cfg) {
  return to_sample(run_paths(Process::loop, m, cfg, std::numeric_limits<double>::infinity()), cfg);
}

EmpiricalSample simulate_brownian(const HyperbolicModel& m, const MCConfig& cfg) {
  return to_sample(run_paths(Process::brownian, m, cfg, std::numeric_limits<double>::infinity()), cfg);
}

DriftProbe drift_probe(const HyperbolicModel& m, const MCConfig& cfg, double r_floor) {
  DriftProbe out;
  auto summarize = [&](const std::vector<PathResult>& paths, double& mean_drift, double& displacement,
                       std::int64_t& samples) {
    std::vector<double> sums, moves;
    for (const PathResult& p : paths) {
      sums.push_back(p.drift_sum);
      moves.push_back(p.radius - cfg.r0);
      samples += p.drift_count;
    }
    mean_drift = samples > 0 ? pairwise_sum(sums) / static_cast<double>(samples) : 0.0;
    displacement = pairwise_sum(moves) / static_cast<double>(paths.size()) / cfg.t_end;
  };
  summarize(run_paths(Process::loop, m, cfg, r_floor), out.loop_mean_drift, out.loop_displacement, out.loop_samples);
  summarize(run_paths(Process::brownian, m, cfg, r_floor), out.brownian_mean_drift, out.brownian_displacement,
            out.brownian_samples);
  return out;
}

// --- analytic laws -------------------------------------------------------

LoopMarginal::LoopMarginal(const RelativizedSpace& s, double t)
    : space_(&s),
      t_(t),
      width_(std::min(1.0, std::sqrt(t) / 20.0)),
      profile_(KernelProfile::shifted_heat(s.model(), t, 6.0 * std::sqrt(t) + 11.0)) {
  const double top = 6.0 * std::sqrt(t) + 10.0;
  const int panels = static_cast<int>(std::ceil(top / width_));
  cumulative_.assign(static_cast<std::size_t>(panels) + 1, 0.0);
  for (int i = 0; i < panels; ++i) {
    const double a = i * width_;
    cumulative_[i + 1] = cumulative_[i] + integrate_gauss([this](double r) { return density(r); }, a, a + width_, 16);
  }
}

double LoopMarginal::density(double r) const {
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (r == 0.0) return 0.0;
  const HyperbolicModel& m = space_->model();
  if (m.dimension() == 3) return 4.0 * kPi * r * r * std::pow(4.0 * kPi * t_, -1.5) * std::exp(-r * r / (4.0 * t_));
  // h~ w = k phi0 sinh^{n-1} |S|.
  return std::exp(profile_.log_value(r) + log_phi0(m, r) + (m.dimension() - 1) * log_sinh(r) +
                  std::log(m.sphere_area()));
}

double LoopMarginal::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (space_->dimension() == 3) {
    const double x = r / std::sqrt(2.0 * t_);
    return std::erf(x / std::sqrt(2.0)) - std::sqrt(2.0 / kPi) * x * std::exp(-0.5 * x * x);
  }
  const auto i = static_cast<std::size_t>(r / width_);
  if (i + 1 >= cumulative_.size()) return std::min(1.0, cumulative_.back());
  const double a = static_cast<double>(i) * width_;
  return cumulative_[i] + integrate_gauss([this](double x) { return density(x); }, a, r, 16);
}

double loop_marginal_density(const RelativizedSpace& s, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (r == 0.0) return 0.0;
  return std::exp(log_relativized_kernel_origin(s, t, r) + s.log_density(r));
}

double loop_marginal_cdf(const RelativizedSpace& s, double t, double r) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  return LoopMarginal(s, t).cdf(r);
}

double bridge_radial_density(const HyperbolicModel& m, double L, double t, double r) {
  if (!(t > 0.0) || !(t < L)) throw std::invalid_argument("bridge needs 0 < t < L");
  if (r < 0.0) throw std::invalid_argument("r must be >= 0");
  if (r == 0.0) return 0.0;
  const double lk = log_shifted_heat_kernel(m, t, r) + log_shifted_heat_kernel(m, L - t, r) -
                    log_shifted_heat_kernel(m, L, 0.0);
  return std::exp(lk + (m.dimension() - 1) * log_sinh(r) + std::log(m.sphere_area()));
}

std::vector<BridgeGap> bridge_to_loop_gap(const RelativizedSpace& s, const std::vector<double>& L_grid, double t,
                                          double r_max) {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  if (r_max == 0.0) r_max = 5.0 + 4.0 * std::sqrt(t);
  if (!(r_max > 0.0)) throw std::invalid_argument("r_max must be positive");
  const HyperbolicModel& m = s.model();
  const std::vector<double> grid = linspace(0.0, r_max, 2001);
  const KernelProfile kt = KernelProfile::shifted_heat(m, t, r_max + 1.0);
  const double log_area = std::log(m.sphere_area());
  std::vector<BridgeGap> out;
  for (double L : L_grid) {
    if (!(L > t)) throw std::invalid_argument("bridge length L must exceed t");
    const KernelProfile kl = KernelProfile::shifted_heat(m, L - t, r_max + 1.0);
    const double at_origin = log_shifted_heat_kernel(m, L, 0.0);
    BridgeGap g{L, 0.0, 0.0};
    for (double r : grid) {
      if (r == 0.0) continue;
      const double common = kt.log_value(r) + (m.dimension() - 1) * log_sinh(r) + log_area;
      const double bridge = std::exp(common + kl.log_value(r) - at_origin);
      const double loop = std::exp(common + log_phi0(m, r));
      const double gap = std::abs(bridge - loop);
      if (gap > g.gap) g = {L, gap, r};
    }
    out.push_back(g);
  }
  return out;
}

double ks_distance(const EmpiricalSample& e, const std::function<double(double)>& cdf) {
  if (e.radii.empty()) throw std::invalid_argument("empty sample");
  std::vector<double> x = e.radii;
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace brownloop
