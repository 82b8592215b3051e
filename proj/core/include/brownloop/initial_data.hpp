#pragma once

// Initial data for the relativized heat equation on H^2 / H^3.

#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "brownloop/geometry.hpp"
#include "brownloop/hkernel.hpp"

namespace brownloop {

enum class Symmetry { radial, axial, general };

const char* to_string(Symmetry s);

/// Geodesic ball B(center, radius) containing the support.
struct SupportBall {
  SpacePoint center;
  double radius = 0.0;
};

class InitialData {
 public:
  using Evaluator = std::function<double(const SpacePoint&)>;
  using Profile = std::function<double(double)>;

  /// f(y) = profile(|y|). support_radius may be infinity.
  static InitialData radial(std::string name, Profile profile, double support_radius);
  /// f(y) = profile(d(y, center)) with center on the reference axis (theta = 0),
  /// supported in B(center, ball_radius).
  static InitialData axial(std::string name, Profile profile, double center_radius, double ball_radius);
  /// Arbitrary evaluator. Only used to exercise admissibility checks.
  static InitialData general(std::string name, Evaluator f, double support_radius);

  const std::string& name() const { return name_; }
  Symmetry symmetry() const { return symmetry_; }
  /// xi: every point of the support satisfies |y| <= xi (infinity if unbounded).
  double support_radius() const { return support_radius_; }
  bool compact() const { return std::isfinite(support_radius_); }
  /// Support ball around which quadrature cells are laid out.
  const SupportBall& support_ball() const { return ball_; }
  /// Radius beyond which a non-compact radial profile is treated as zero.
  double truncation_radius() const;
  bool is_zero() const { return zero_; }

  double operator()(int dimension, const SpacePoint& y) const;
  /// Profile as a function of the distance to the support-ball center.
  double profile(double s) const { return profile_(s); }

  /// Copy with values multiplied by k.
  InitialData scaled(double k) const;
  /// Copy with a different truncation radius for unbounded support.
  InitialData with_truncation(double radius) const;

 private:
  InitialData() = default;

  std::string name_;
  Symmetry symmetry_ = Symmetry::radial;
  double support_radius_ = 0.0;
  SupportBall ball_;
  Profile profile_;
  Evaluator general_;
  double truncation_ = 80.0;
  bool zero_ = false;
};

/// f = 0.
InitialData zero_data();
/// Unit-mass (w.r.t. the relativized measure) truncated Gaussian
/// (e^{-r^2/2 sigma^2} - e^{-xi^2/2 sigma^2})_+.
InitialData radial_bump(const HyperbolicModel& m, double sigma = 0.5, double xi = 2.0);
/// Unit-mass smooth bump exp(1 - 1/(1 - s^2)), s = d(y, c), centered at distance
/// `offset` on the reference axis with ball radius `xi - offset`.
InitialData offcenter_bump(const HyperbolicModel& m, double offset = 1.0, double xi = 2.0);
/// Unit-mass radial data A e^{-2 rho r} (1 + r)^{-4} with unbounded support.
InitialData decaying_data(const HyperbolicModel& m);
/// Constant function on all of space (never admissible).
InitialData constant_data(double value);
/// Named default data: "radial", "offcenter", "decaying".
InitialData data_by_name(const HyperbolicModel& m, const std::string& name);

/// Quadrature cell of a geodesic ball: a node, its hyperboloid coordinates,
/// its Riemannian volume weight and its distance to the ball center.
struct BallCell {
  SpacePoint point;
  std::array<double, 4> hyper;
  double weight = 0.0;
  double s = 0.0;
};

struct CellResolution {
  int radial = 24;   ///< Gauss-Legendre nodes per radial panel (two panels)
  int polar = 24;    ///< H^3 polar nodes (Gauss-Legendre in cos)
  int azimuth = 24;  ///< periodic trapezoid nodes
};

/// Tensor quadrature of B(ball.center, ball.radius) in geodesic polar
/// coordinates around the center; the center must lie on the reference axis.
std::vector<BallCell> ball_cells(int dimension, const SupportBall& ball, CellResolution res = {});

/// Integral of profile(s) * phi0(|y|)^2 over the ball of `data`, i.e. the
/// relativized mass, via a quadrature in coordinates centered at the ball center.
double relativized_mass(const HyperbolicModel& m, const InitialData& data);

}  // namespace brownloop
