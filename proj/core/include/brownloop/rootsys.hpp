#pragma once

// Structural constants of a noncompact symmetric space (rank, dimension,
// dimension at infinity, rho) and the long-time critical regions of the
// relativized heat kernel, expressed on the closed positive Weyl chamber.

#include <string>
#include <vector>

namespace brownloop {

/// A positive root alpha together with the multiplicities of alpha and 2*alpha.
struct Root {
  std::vector<double> vector;
  int multiplicity = 1;
  int multiplicity_double = 0;
};

struct Dimensions {
  int n = 0;   ///< manifold dimension
  int nu = 0;  ///< dimension at infinity (pseudo-dimension)
};

/// Restricted root data of a symmetric space. Immutable after construction.
///
/// The listed roots are the reduced positive roots; a nonzero
/// `multiplicity_double` adds 2*alpha as a further positive root.
class RootDatum {
 public:
  /// Real hyperbolic space H^n, curvature -1: one root of unit length, m = n - 1.
  static RootDatum hyperbolic(int n);
  /// The A2 system (SL(3,R)/SO(3)): three unit roots of multiplicity 1.
  static RootDatum a2();
  /// Flat R^rank with no roots.
  static RootDatum euclidean(int rank);
  /// Explicit root list; throws std::invalid_argument on an invalid datum.
  static RootDatum from_roots(int rank, std::vector<Root> roots, std::string name = "custom");
  /// Named family: "h2", "h3", "hN" for N >= 2, or "a2".
  static RootDatum by_name(const std::string& name);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  const std::vector<Root>& roots() const { return roots_; }
  const std::vector<double>& rho() const { return rho_; }
  double rho_norm_sq() const;
  Dimensions dims() const { return dims_; }

 private:
  RootDatum() = default;
  void derive();

  std::string name_;
  int rank_ = 0;
  std::vector<Root> roots_;
  std::vector<double> rho_;
  Dimensions dims_;
};

Dimensions dimensions(const RootDatum& d);

/// Point H of the closed positive chamber (all <alpha, H> >= 0).
class ChamberPoint {
 public:
  ChamberPoint(const RootDatum& d, std::vector<double> coords);
  /// Rank-one shortcut: H = r * alpha / |alpha|^2 so that <alpha, H> = r for a unit root.
  static ChamberPoint radial(const RootDatum& d, double r);

  const std::vector<double>& coords() const { return coords_; }
  double norm() const;

 private:
  std::vector<double> coords_;
};

double inner(const std::vector<double>& a, const std::vector<double>& b);

/// Haar density delta(H) = prod_{alpha in Sigma+} sinh(<alpha,H>)^{m_alpha}.
double haar_density(const RootDatum& d, const ChamberPoint& h);
/// prod (<alpha,H>/(1+<alpha,H>))^{m_alpha} * exp(2 <rho,H>), the shape of delta.
double haar_density_envelope(const RootDatum& d, const ChamberPoint& h);

struct Bracket {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double v) const { return lower <= v && v <= upper; }
};

/// Multiplicative constants that turn an asymptotic shape into a two-sided bound.
struct EnvelopeConstants {
  double lower = 1.0;
  double upper = 1.0;
};

/// Shape of the ground spherical function: prod_{reduced}(1 + <alpha,H>) e^{-<rho,H>}.
double phi0_envelope_shape(const RootDatum& d, const ChamberPoint& h);
Bracket phi0_envelope(const RootDatum& d, const ChamberPoint& h, const EnvelopeConstants& c);

/// mu(H) = min over positive roots of <alpha, H>. Throws on an empty root system.
double mu_min(const RootDatum& d, const ChamberPoint& h);

/// eps(t) = scale * t^{-gamma}; gamma in (0, 1/2) so that eps -> 0 and eps*sqrt(t) -> inf.
class EpsilonSchedule {
 public:
  static EpsilonSchedule power(double gamma, double scale = 1.0);

  double operator()(double t) const;
  /// Same family with every value multiplied by `factor` (eps'' = 2 eps uses factor 2).
  EpsilonSchedule scaled(double factor) const;

  double gamma() const { return gamma_; }
  double scale() const { return scale_; }
  std::string describe() const;

 private:
  EpsilonSchedule(double gamma, double scale) : gamma_(gamma), scale_(scale) {}
  double gamma_;
  double scale_;
};

struct RegionRadii {
  double inner = 0.0;  ///< eps(t) sqrt(t)
  double outer = 0.0;  ///< sqrt(t) / eps(t)
  double wall = 0.0;   ///< required mu(H) for Omega_t, equal to inner
  bool degenerate() const { return inner > outer; }
};

RegionRadii region_radii(double t, const EpsilonSchedule& eps);

/// L1 critical region: eps sqrt(t) <= |H| <= sqrt(t)/eps and mu(H) >= eps sqrt(t).
bool in_omega_t(const RootDatum& d, const ChamberPoint& h, double t, const EpsilonSchedule& eps);
/// Same region for the doubled schedule eps'' = 2 eps.
bool in_omega_double_prime(const RootDatum& d, const ChamberPoint& h, double t, const EpsilonSchedule& eps);
/// L-infinity critical region: |H| <= sqrt(t)/eps.
bool in_R_t(const RootDatum& d, const ChamberPoint& h, double t, const EpsilonSchedule& eps);

}  // namespace brownloop
