#pragma once

// Spherical functions, Plancherel densities and heat kernels of the real
// hyperbolic spaces H^2 and H^3 (curvature -1, heat equation du/dt = Lap u).
//
// Kernels are exposed both as plain values and in "shifted" log form,
//   log( e^{rho^2 t} h_t(r) ),
// which stays finite for the large times used by the long-time experiments.

#include <memory>
#include <string>

#include "brownloop/chebyshev.hpp"
#include "brownloop/geometry.hpp"
#include "brownloop/quadrature.hpp"
#include "brownloop/rootsys.hpp"

namespace brownloop {

struct QuadratureSpec {
  int node_count = 24;        ///< Gauss-Legendre nodes per panel, >= 16
  double lambda_max = 0.0;    ///< spectral cutoff; 0 selects 8 / sqrt(t)
  double r_max = 0.0;         ///< spatial cutoff; 0 selects 6 sqrt(t) + 10
  double tolerance = 1e-10;   ///< target relative tolerance, in (0, 1e-4]

  void validate() const;
  double spectral_cutoff(double t) const;
  double spatial_cutoff(double t) const;
};

class HyperbolicModel {
 public:
  /// Builds H^n (n = 2 or 3) and calibrates its constants. Costs tens of milliseconds.
  static std::shared_ptr<const HyperbolicModel> create(int n, QuadratureSpec spec = {});
  /// Shared default-spec instances, created on first use.
  static const HyperbolicModel& h2();
  static const HyperbolicModel& h3();
  /// "h2" or "h3".
  static const HyperbolicModel& by_name(const std::string& name);

  int dimension() const { return n_; }
  const std::string& name() const { return datum_.name(); }
  double rho() const { return rho_; }
  double rho_sq() const { return rho_ * rho_; }
  /// Root multiplicity m_alpha = n - 1 (m_2alpha = 0 for real hyperbolic spaces).
  int multiplicity() const { return n_ - 1; }
  const RootDatum& root_datum() const { return datum_; }
  const QuadratureSpec& quadrature() const { return spec_; }
  bool has_closed_form() const { return n_ == 3; }
  /// Area of the unit sphere S^{n-1}.
  double sphere_area() const;

  /// Scalar multiplying the Plancherel shape, fixed by total heat mass 1 at t = 1.
  double normalization_constant() const { return normalization_; }
  const EnvelopeConstants& phi0_constants() const { return phi0_constants_; }
  const EnvelopeConstants& kernel_constants() const { return kernel_constants_; }

  /// Tabulated log(phi0): a fine table on [0, table_radius()] and a coarse
  /// one on [table_radius(), far_table_radius()] (H^2 only).
  const ChebyshevTable& log_phi0_table() const { return log_phi0_; }
  const ChebyshevTable& log_phi0_far_table() const { return log_phi0_far_; }
  static constexpr double table_radius() { return 64.0; }
  static constexpr double far_table_radius() { return 1024.0; }

 private:
  HyperbolicModel(int n, QuadratureSpec spec);
  void calibrate();

  int n_;
  double rho_;
  RootDatum datum_;
  QuadratureSpec spec_;
  double normalization_ = 1.0;
  EnvelopeConstants phi0_constants_;
  EnvelopeConstants kernel_constants_;
  ChebyshevTable log_phi0_;
  ChebyshevTable log_phi0_far_;
};

/// phi_lambda(r). H^3: sin(lambda r)/(lambda sinh r). H^2: quadrature of the
/// integral representation over K, reduced to the Mehler form. Checked against
/// a refined rule; throws QuadratureError when the two disagree beyond tolerance.
double spherical_phi(const HyperbolicModel& m, double lambda, double r);

/// Ground spherical function phi_0 and its logarithm / log-derivative.
double phi0(const HyperbolicModel& m, double r);
double log_phi0(const HyperbolicModel& m, double r);
double log_phi0_derivative(const HyperbolicModel& m, double r);

/// Normalized Plancherel density: C * lambda^2 (H^3), C * lambda tanh(pi lambda) (H^2).
double plancherel_density(const HyperbolicModel& m, double lambda);

/// h_t(r). H^3 evaluates the closed form; H^2 the inversion formula.
double heat_kernel(const HyperbolicModel& m, double t, double r);

/// log(e^{rho^2 t} h_t(r)) on the default evaluation path.
double log_shifted_heat_kernel(const HyperbolicModel& m, double t, double r);

struct KernelEvaluation {
  double value = 0.0;  ///< e^{rho^2 t} h_t(r)
  double error = 0.0;  ///< absolute error estimate (rounding floor + spectral tail)
};

/// Inversion-formula quadrature of e^{rho^2 t} h_t(r), for either model.
KernelEvaluation heat_kernel_inversion(const HyperbolicModel& m, double t, double r);

/// log(e^{t} h_t(r)) for H^3 from the closed form (4 pi t)^{-3/2} (r/sinh r) e^{-t - r^2/4t}.
double log_shifted_heat_kernel_h3(double t, double r);

/// log(e^{t/4} h_t(r)) for H^2 from the Abel-transform representation
///   h_t(r) = sqrt(2) e^{-t/4} (4 pi t)^{-3/2} int_r^inf s e^{-s^2/4t} / sqrt(cosh s - cosh r) ds.
/// Positive integrand, no cancellation: used when the inversion formula hits its rounding floor.
double log_shifted_heat_kernel_h2_abel(double t, double r);

/// Two-sided global estimate c t^{-n/2} (1+t+r)^{m/2-1} phi0(r) e^{-rho^2 t - r^2/4t}.
double heat_kernel_envelope_shape(const HyperbolicModel& m, double t, double r);
Bracket heat_kernel_envelope(const HyperbolicModel& m, double t, double r);

/// h_t(d(g,y))/h_t(|g|) - phi0(d(g,y))/phi0(|g|).
double ratio_gap(const HyperbolicModel& m, double t, const SpacePoint& g, const SpacePoint& y);

struct RatioGapSup {
  double value = 0.0;  ///< max |ratio_gap| over the grid
  SpacePoint g;
  SpacePoint y;
};

/// Grid sup of |ratio_gap| with |g| = g_radius on the reference axis and y over
/// the ball of radius xi (11 radii x 13 angles; the set is symmetric about the axis).
RatioGapSup ratio_gap_sup(const HyperbolicModel& m, double t, double g_radius, double xi);

double hyperbolic_distance(const HyperbolicModel& m, const SpacePoint& p, const SpacePoint& q);

/// <rho, A(p)> realized as rho times the Busemann coordinate toward theta = 0.
double busemann_rho(const HyperbolicModel& m, const SpacePoint& p);

/// Average of phi0(d(x, k.y)) over rotations k of y, minus phi0(|x|) phi0(|y|).
double phi0_product_check(const HyperbolicModel& m, const SpacePoint& x, const SpacePoint& y,
                          int nodes = 48);

/// Radial profile r -> e^{rho^2 t} h_t(r) at a fixed time, either exact
/// (H^3 closed form) or tabulated in log form on [0, r_max] (H^2).
class KernelProfile {
 public:
  static KernelProfile shifted_heat(const HyperbolicModel& m, double t, double r_max);

  double t() const { return t_; }
  double r_max() const { return r_max_; }
  bool tabulated() const { return !table_.empty(); }
  double log_value(double r) const;
  double value(double r) const;
  /// Tabulated remainder log k(r) - log phi0(r) + r^2/4t; requires tabulated() and r <= r_max().
  double log_remainder(double r) const { return table_(r); }

 private:
  KernelProfile(const HyperbolicModel& m, double t, double r_max);

  const HyperbolicModel* model_;
  double t_;
  double r_max_;
  ChebyshevTable table_;
};

}  // namespace brownloop
