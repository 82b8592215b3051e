#pragma once

#include <array>

namespace brownloop {

/// Geodesic polar coordinates around the origin of H^2 or H^3.
///
/// H^3: theta in [0, pi] is the polar angle from the reference (north pole)
/// direction and phi in [0, 2pi) the azimuth. H^2: theta in [0, 2pi) is the
/// angle from the reference direction and phi is unused.
struct SpacePoint {
  double r = 0.0;
  double theta = 0.0;
  double phi = 0.0;

  static SpacePoint origin() { return {}; }
  /// Throws std::invalid_argument if the coordinates are invalid for H^dimension.
  void validate(int dimension) const;
};

/// Unit direction of a point in R^{dimension}; unused trailing entries are zero.
std::array<double, 3> direction(int dimension, const SpacePoint& p);

/// Minkowski embedding (cosh r, sinh r * direction) on the hyperboloid.
std::array<double, 4> hyperboloid(int dimension, const SpacePoint& p);

/// Hyperbolic distance between points at radii a, b whose directions have
/// chordal separation `chord` = |n_a - n_b| (in [0, 2]).
/// Stable near coincidence and for radii into the hundreds.
double distance_from_chord(double a, double b, double chord);

/// Law of cosines form: cos_gamma is the cosine of the angle between directions.
double distance_from_cosine(double a, double b, double cos_gamma);

/// d(p, q) for points of H^dimension.
double hyperbolic_distance(int dimension, const SpacePoint& p, const SpacePoint& q);

/// Busemann coordinate toward the reference boundary point (theta = 0):
/// log of the height of p in the upper half-space model that sends the
/// reference point to infinity and the origin to height 1.
double busemann(int dimension, const SpacePoint& p);

/// Height of p in that half-space model, (1 - |x|^2) / |x - xi|^2 in the ball model.
double half_space_height(int dimension, const SpacePoint& p);

}  // namespace brownloop
