#pragma once

// Relativized heat semigroup u(t) = e^{t Lap~} f, the mass function, and the
// long-time distances between u(t) and M~ h~_t(o, .).

#include <string>
#include <vector>

#include "brownloop/doob.hpp"
#include "brownloop/initial_data.hpp"
#include "brownloop/rootsys.hpp"

namespace brownloop {

struct EvolveOptions {
  int worker_count = 1;
  EpsilonSchedule eps = EpsilonSchedule::power(0.25);
  /// Inner tensor grid of the support ball for non-radial data.
  CellResolution cells{16, 20, 24};
  /// Outer radial grid: panels of `outer_nodes` Gauss nodes on [0, 6 sqrt t + xi].
  int outer_panels = 48;
  int outer_nodes = 16;
  /// Outer angular nodes for non-radial data.
  int outer_angles = 16;
};

/// M~(g) = (1/phi0(|g|)) int f(y) phi0(|y|) phi0(d(y,g)) dmu(y).
double mass_function(const RelativizedSpace& s, const InitialData& f, const SpacePoint& g);

/// int_0^inf f(r) w(r) dr for radial f. Throws std::invalid_argument when the
/// tail test finds the integral divergent.
double mass_constant_radial(const RelativizedSpace& s, const InitialData& f);

/// Sampled mass function over a set of points; `constant` is set for radial data.
struct MassValue {
  bool constant = false;
  double value = 0.0;
  std::vector<SpacePoint> points;
  std::vector<double> values;

  double max_abs() const;
};

MassValue mass_values(const RelativizedSpace& s, const InitialData& f, const std::vector<SpacePoint>& points);

/// u(t, g) = int h~_t(g, y) f(y) dmu~(y) at each point.
std::vector<double> evolve(const RelativizedSpace& s, const InitialData& f, double t,
                           const std::vector<SpacePoint>& points, const EvolveOptions& opts = {});

/// u(t, g) - M~(g) h~_t(o, g) at each point.
std::vector<double> evolve_difference(const RelativizedSpace& s, const InitialData& f, double t,
                                      const std::vector<SpacePoint>& points, const EvolveOptions& opts = {});

/// Exponent (nu + n)/4 of the sup-norm scaling.
double sup_scaling_exponent(const HyperbolicModel& m);

double l1_distance(const RelativizedSpace& s, const InitialData& f, double t, const EvolveOptions& opts = {});
double linf_scaled_distance(const RelativizedSpace& s, const InitialData& f, double t,
                            const EvolveOptions& opts = {});
/// t^{(nu+n)/(4p')} || u - M~ h~_t ||_p, 1 < p < inf.
double lp_scaled_distance(const RelativizedSpace& s, const InitialData& f, double t, double p,
                          const EvolveOptions& opts = {});

struct Admissibility {
  bool admissible = false;
  double value = 0.0;         ///< int |f| phi0 e^{rho r} dmu (truncated plus extrapolated tail)
  bool inconclusive = false;  ///< tail test could not decide; reported as inadmissible
  double tail_ratio = 0.0;    ///< ratio of the last two dyadic tail contributions
};

Admissibility admissibility_check(const RelativizedSpace& s, const InitialData& f);

struct Concentration {
  double value = 0.0;
  bool degenerate = false;
};

/// Relativized heat mass at time t outside [eps sqrt t, sqrt t / eps].
/// Returns 1 with the degenerate flag when the interval is empty.
Concentration concentration_outside_omega(const RelativizedSpace& s, double t, const EpsilonSchedule& eps);

struct TailSup {
  double value = 0.0;     ///< t^{(nu+n)/4} sup_{r >= boundary} h~_t(o, r)
  double boundary = 0.0;  ///< sqrt t / eps, or sqrt t when eps >= 1
  bool degenerate = false;
};

TailSup linf_outside_R(const RelativizedSpace& s, double t, const EpsilonSchedule& eps);

struct ConvergenceRow {
  double t = 0.0;
  double l1 = 0.0;
  double linf_scaled = 0.0;
  std::vector<double> lp;
  double mass = 0.0;        ///< M~(o)
  double tail_bound = 0.0;  ///< bound on the L1 mass outside the truncated domain
  double seconds = 0.0;
};

struct ConvergenceReport {
  std::string model;
  std::string data;
  std::vector<double> p_list;
  std::vector<ConvergenceRow> rows;
};

/// One row per time; t_grid must be strictly increasing.
ConvergenceReport run_convergence_experiment(const RelativizedSpace& s, const InitialData& f,
                                             const std::vector<double>& t_grid, const std::vector<double>& p_list,
                                             const EvolveOptions& opts = {});

}  // namespace brownloop
