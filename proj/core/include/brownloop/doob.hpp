#pragma once

// The ground-state (phi0) Doob transform of the heat semigroup: relativized
// measure w(r) dr, relativized kernel, and numerical checks of the transform
// identities.

#include <functional>
#include <vector>

#include "brownloop/hkernel.hpp"
#include "brownloop/initial_data.hpp"

namespace brownloop {

class RelativizedSpace {
 public:
  explicit RelativizedSpace(const HyperbolicModel& m) : model_(&m) {}

  const HyperbolicModel& model() const { return *model_; }
  int dimension() const { return model_->dimension(); }

  /// w(r) = phi0(r)^2 sinh(r)^{n-1} |S^{n-1}|; 4 pi r^2 in H^3.
  double density(double r) const;
  double log_density(double r) const;

 private:
  const HyperbolicModel* model_;
};

/// e^{rho^2 t} h_t(d(x,y)) / (phi0(|x|) phi0(|y|)).
double relativized_kernel(const RelativizedSpace& s, double t, const SpacePoint& x, const SpacePoint& y);
/// h~_t(o, r) and its logarithm. In H^3 this is (4 pi t)^{-3/2} e^{-r^2/4t}.
double relativized_kernel_origin(const RelativizedSpace& s, double t, double r);
double log_relativized_kernel_origin(const RelativizedSpace& s, double t, double r);

struct NormalizationResult {
  double value = 0.0;       ///< int_0^{r_max} h~_t(o,r) w(r) dr
  double r_max = 0.0;
  double tail_bound = 0.0;  ///< bound on the mass beyond r_max
};

/// Total relativized mass at time t; r_max = 0 selects 10 sqrt(t) + 10.
/// Throws std::invalid_argument when r_max < 6 sqrt(t) + 10.
NormalizationResult check_normalization(const RelativizedSpace& s, double t, double r_max = 0.0);

/// Upper bound on int_{r0}^inf h~_t(o,r) w(r) dr: exact Maxwell tail in H^3,
/// integrated upper kernel envelope in H^2.
double relativized_tail_bound(const RelativizedSpace& s, double t, double r0);

struct RadialGrid {
  double r_min = 1e-3;
  double r_max = 5.0;
  int intervals = 256;  ///< uniform spacing (r_max - r_min) / intervals

  double spacing() const { return (r_max - r_min) / intervals; }
};

struct GeneratorResult {
  std::vector<double> r;
  std::vector<double> conjugated;  ///< (1/phi0)(Lap + rho^2)(phi0 f)
  std::vector<double> direct;      ///< f'' + [(n-1) coth r + 2 (log phi0)'] f'
  double max_discrepancy = 0.0;
  double spacing = 0.0;
};

/// Two finite-difference evaluations of the relativized radial Laplacian of f
/// on a uniform grid (second-order central stencils, one-sided at the ends).
/// Throws std::invalid_argument with fewer than 64 interior nodes.
GeneratorResult relativized_generator_apply(const RelativizedSpace& s, const std::function<double(double)>& f,
                                            const RadialGrid& grid);

/// Drift of the relativized radial generator: (n-1) coth r + 2 (log phi0)'(r).
double relativized_drift(const RelativizedSpace& s, double r);

struct SemigroupResult {
  double relativized = 0.0;  ///< int h~_t(o,y) f(y) dmu~(y)
  double conjugated = 0.0;   ///< e^{rho^2 t} / phi0(o) int h_t(|y|) phi0(|y|) f(y) dmu(y)
  double residual = 0.0;
};

/// Both sides of the semigroup identity at the origin for radial compactly supported f.
SemigroupResult semigroup_identity_check(const RelativizedSpace& s, double t, const InitialData& f);

/// int h~_s(o,z) h~_t(z,y) dmu~(z) - h~_{s+t}(o,y), relative to h~_{s+t}(o,y),
/// with the z integral over radius and the angle to y.
double chapman_kolmogorov_residual(const RelativizedSpace& sp, double s, double t, double y_radius);

struct SupNorm {
  double value = 0.0;
  double argmax = 0.0;
};

/// sup_r h~_t(o, r).
SupNorm relativized_sup_norm(const RelativizedSpace& s, double t);

}  // namespace brownloop
