#pragma once

// Monte Carlo for the radial part of the infinite Brownian loop (the
// relativized phi0-process), a plain Brownian comparator, and the analytic
// bridge and loop radial laws they are compared against.

#include <cstdint>
#include <functional>
#include <vector>

#include "brownloop/doob.hpp"
#include "brownloop/hkernel.hpp"

namespace brownloop {

struct MCConfig {
  std::int64_t n_paths = 100000;
  double dt = 1e-3;
  double t_end = 1.0;
  double r0 = 0.0;
  std::uint64_t seed = 20240601;
  int worker_count = 1;

  /// Throws std::invalid_argument unless dt in (0, 1e-2], n_paths >= 1000,
  /// t_end > 0, r0 >= 0 and worker_count >= 1.
  void validate() const;
  /// Number of steps; the step is t_end / steps() <= dt.
  std::int64_t steps() const;
};

struct EmpiricalSample {
  std::vector<double> radii;     ///< terminal radii, indexed by path
  std::int64_t reflections = 0;  ///< steps that crossed r < 0 and were reflected
  std::int64_t steps = 0;
  double dt = 0.0;

  double mean() const;
  double mean_square() const;
  /// Counts on `bins` equal bins of [0, r_max]; values beyond r_max are dropped.
  std::vector<std::int64_t> histogram(int bins, double r_max) const;
  /// Fraction of radii <= x.
  double cdf(double x) const;
};

/// (n-1) coth r + 2 (log phi0)'(r); exactly 2/r in H^3. Throws for r <= 0.
double loop_drift(const HyperbolicModel& m, double r);
/// (n-1) coth r, the radial drift of Brownian motion with generator Lap.
double brownian_drift(const HyperbolicModel& m, double r);

/// Euler-Maruyama for dr = loop_drift dt + sqrt(2) dB. Below sqrt(2 dt) the
/// step is the exact flat n-dimensional Gaussian move plus the curvature
/// correction of the drift; negative radii are reflected and counted.
EmpiricalSample simulate_loop(const HyperbolicModel& m, const MCConfig& cfg);
/// Same scheme with the Brownian radial drift.
EmpiricalSample simulate_brownian(const HyperbolicModel& m, const MCConfig& cfg);

struct DriftProbe {
  double loop_mean_drift = 0.0;       ///< drift averaged over loop path samples with r > r_floor
  double brownian_mean_drift = 0.0;   ///< same for the Brownian comparator
  double loop_displacement = 0.0;     ///< mean (r(T) - r0) / T
  double brownian_displacement = 0.0;
  std::int64_t loop_samples = 0;
  std::int64_t brownian_samples = 0;
};

/// Time-averaged drift along paths started at cfg.r0, sampled where r > r_floor.
DriftProbe drift_probe(const HyperbolicModel& m, const MCConfig& cfg, double r_floor = 10.0);

/// Radial law of the loop at time t: h~_t(o, r) w(r), tabulated for fast
/// repeated evaluation.
class LoopMarginal {
 public:
  LoopMarginal(const RelativizedSpace& s, double t);

  double density(double r) const;
  double cdf(double r) const;
  double t() const { return t_; }

 private:
  const RelativizedSpace* space_;
  double t_;
  double width_;
  KernelProfile profile_;
  std::vector<double> cumulative_;  ///< cdf at r = i * width_
};

double loop_marginal_density(const RelativizedSpace& s, double t, double r);
double loop_marginal_cdf(const RelativizedSpace& s, double t, double r);

/// Radial law at time t of the Brownian bridge of length L pinned at o:
/// h_t(r) h_{L-t}(r) / h_L(0) sinh(r)^{n-1} |S^{n-1}|. Throws unless 0 < t < L.
double bridge_radial_density(const HyperbolicModel& m, double L, double t, double r);

struct BridgeGap {
  double L = 0.0;
  double gap = 0.0;     ///< sup_r |bridge - loop|
  double argmax = 0.0;
};

/// Sup over r in [0, r_max] of |bridge density - loop density| for each L;
/// r_max = 0 selects 5 + 4 sqrt t.
std::vector<BridgeGap> bridge_to_loop_gap(const RelativizedSpace& s, const std::vector<double>& L_grid, double t,
                                          double r_max = 0.0);

/// Kolmogorov-Smirnov distance between the sample and a continuous cdf.
double ks_distance(const EmpiricalSample& e, const std::function<double(double)>& cdf);

}  // namespace brownloop
