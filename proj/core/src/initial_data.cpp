#include "brownloop/initial_data.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "brownloop/quadrature.hpp"

namespace brownloop {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hyperboloid index of the reference axis (theta = 0).
int axis_index(int dimension) { return dimension == 2 ? 1 : 3; }

SpacePoint from_hyperboloid(int dimension, const std::array<double, 4>& y) {
  const double spatial = std::sqrt(y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
  SpacePoint p;
  p.r = std::asinh(spatial);
  if (spatial == 0.0) return p;
  if (dimension == 2) {
    double th = std::atan2(y[2], y[1]);
    if (th < 0.0) th += 2.0 * std::numbers::pi;
    p.theta = th;
  } else {
    p.theta = std::atan2(std::hypot(y[1], y[2]), y[3]);
    double ph = std::atan2(y[2], y[1]);
    if (ph < 0.0) ph += 2.0 * std::numbers::pi;
    p.phi = ph;
  }
  return p;
}

// Radial (1-D) relativized mass int profile(r) w(r) dr on [0, radius].
double radial_mass(const HyperbolicModel& m, const InitialData::Profile& profile, double radius) {
  const int n = m.dimension();
  const int panels = std::max(4, static_cast<int>(std::ceil(2.0 * radius)));
  return m.sphere_area() * integrate_panels(
                               [&](double r) {
                                 if (r == 0.0) return 0.0;
                                 const double logw = 2.0 * log_phi0(m, r) + (n - 1) * std::log(std::sinh(r));
                                 return profile(r) * std::exp(logw);
                               },
                               0.0, radius, panels, 24);
}

}  // namespace

const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::radial:
      return "radial";
    case Symmetry::axial:
      return "axial";
    case Symmetry::general:
      return "general";
  }
  return "unknown";
}

InitialData InitialData::radial(std::string name, Profile profile, double support_radius) {
  if (!(support_radius > 0.0)) throw std::invalid_argument("support radius must be positive");
  InitialData d;
  d.name_ = std::move(name);
  d.symmetry_ = Symmetry::radial;
  d.support_radius_ = support_radius;
  d.ball_ = {SpacePoint::origin(), support_radius};
  d.profile_ = std::move(profile);
  return d;
}

InitialData InitialData::axial(std::string name, Profile profile, double center_radius, double ball_radius) {
  if (!(center_radius >= 0.0) || !(ball_radius > 0.0))
    throw std::invalid_argument("support ball needs center radius >= 0 and positive radius");
  InitialData d;
  d.name_ = std::move(name);
  d.symmetry_ = Symmetry::axial;
  d.support_radius_ = center_radius + ball_radius;
  d.ball_ = {SpacePoint{center_radius, 0.0, 0.0}, ball_radius};
  d.profile_ = std::move(profile);
  return d;
}

InitialData InitialData::general(std::string name, Evaluator f, double support_radius) {
  if (!(support_radius > 0.0)) throw std::invalid_argument("support radius must be positive");
  InitialData d;
  d.name_ = std::move(name);
  d.symmetry_ = Symmetry::general;
  d.support_radius_ = support_radius;
  d.ball_ = {SpacePoint::origin(), support_radius};
  d.general_ = std::move(f);
  return d;
}

double InitialData::truncation_radius() const {
  if (compact()) return support_radius_;
  return truncation_;
}

InitialData InitialData::with_truncation(double radius) const {
  if (!(radius > 0.0)) throw std::invalid_argument("truncation radius must be positive");
  InitialData d = *this;
  d.truncation_ = radius;
  return d;
}

double InitialData::operator()(int dimension, const SpacePoint& y) const {
  if (zero_) return 0.0;
  switch (symmetry_) {
    case Symmetry::radial:
      return y.r < support_radius_ ? profile_(y.r) : 0.0;
    case Symmetry::axial: {
      const double s = hyperbolic_distance(dimension, y, ball_.center);
      return s < ball_.radius ? profile_(s) : 0.0;
    }
    case Symmetry::general:
      return general_(y);
  }
  return 0.0;
}

InitialData InitialData::scaled(double k) const {
  InitialData d = *this;
  if (profile_) {
    Profile p = profile_;
    d.profile_ = [p, k](double s) { return k * p(s); };
  }
  if (general_) {
    Evaluator g = general_;
    d.general_ = [g, k](const SpacePoint& y) { return k * g(y); };
  }
  if (k == 0.0) d.zero_ = true;
  return d;
}

InitialData zero_data() {
  InitialData d = InitialData::radial("zero", [](double) { return 0.0; }, 1.0);
  return d.scaled(0.0);
}

InitialData radial_bump(const HyperbolicModel& m, double sigma, double xi) {
  if (!(sigma > 0.0) || !(xi > 0.0)) throw std::invalid_argument("bump needs sigma > 0 and xi > 0");
  const double floor = std::exp(-xi * xi / (2.0 * sigma * sigma));
  auto raw = [sigma, floor](double r) { return std::max(0.0, std::exp(-r * r / (2.0 * sigma * sigma)) - floor); };
  const double mass = radial_mass(m, raw, xi);
  const double k = 1.0 / mass;
  return InitialData::radial("radial", [raw, k](double r) { return k * raw(r); }, xi);
}

InitialData offcenter_bump(const HyperbolicModel& m, double offset, double xi) {
  if (!(offset > 0.0) || !(xi > offset)) throw std::invalid_argument("off-center bump needs 0 < offset < xi");
  const double a = xi - offset;
  auto raw = [a](double s) {
    const double u = s / a;
    if (u >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
  };
  const InitialData unit = InitialData::axial("offcenter", raw, offset, a);
  return unit.scaled(1.0 / relativized_mass(m, unit));
}

InitialData decaying_data(const HyperbolicModel& m) {
  const double rho = m.rho();
  auto raw = [rho](double r) { return std::exp(-2.0 * rho * r) * std::pow(1.0 + r, -4.0); };
  // f w decays like e^{-2 rho r}; beyond 36/rho + 8 it is below 1e-16 of the mass.
  InitialData d = InitialData::radial("decaying", raw, kInf).with_truncation(36.0 / rho + 8.0);
  return d.scaled(1.0 / radial_mass(m, raw, d.truncation_radius()));
}

InitialData constant_data(double value) {
  return InitialData::general("constant", [value](const SpacePoint&) { return value; }, kInf);
}

InitialData data_by_name(const HyperbolicModel& m, const std::string& name) {
  if (name == "radial") return radial_bump(m);
  if (name == "offcenter") return offcenter_bump(m);
  if (name == "decaying") return decaying_data(m);
  throw std::invalid_argument("unknown data '" + name + "' (expected radial, offcenter or decaying)");
}

std::vector<BallCell> ball_cells(int dimension, const SupportBall& ball, CellResolution res) {
  if (dimension != 2 && dimension != 3) throw std::invalid_argument("ball cells exist only in H^2 and H^3");
  if (!std::isfinite(ball.radius) || !(ball.radius > 0.0))
    throw std::invalid_argument("ball cells need a finite positive radius");
  if (ball.center.r > 0.0 && ball.center.theta != 0.0)
    throw std::invalid_argument("ball center must lie on the reference axis");
  const NodeSet radial = panel_nodes(0.0, ball.radius, 2, res.radial);
  const NodeSet azimuth = trapezoid_periodic(0.0, 2.0 * std::numbers::pi, res.azimuth);
  const int axis = axis_index(dimension);
  const double ca = std::cosh(ball.center.r);
  const double sa = std::sinh(ball.center.r);
  auto place = [&](double s, const std::array<double, 3>& omega) {
    std::array<double, 4> y{std::cosh(s), 0.0, 0.0, 0.0};
    const double sh = std::sinh(s);
    if (dimension == 2) {
      y[1] = sh * omega[0];
      y[2] = sh * omega[1];
    } else {
      y[1] = sh * omega[0];
      y[2] = sh * omega[1];
      y[3] = sh * omega[2];
    }
    const double y0 = y[0];
    const double yk = y[axis];
    y[0] = ca * y0 + sa * yk;
    y[axis] = sa * y0 + ca * yk;
    return y;
  };
  std::vector<BallCell> cells;
  if (dimension == 2) {
    cells.reserve(radial.size() * azimuth.size());
    for (std::size_t i = 0; i < radial.size(); ++i) {
      const double s = radial.x[i];
      const double wr = radial.w[i] * std::sinh(s);
      for (std::size_t k = 0; k < azimuth.size(); ++k) {
        const double a = azimuth.x[k];
        BallCell c;
        c.hyper = place(s, {std::cos(a), std::sin(a), 0.0});
        c.point = from_hyperboloid(2, c.hyper);
        c.weight = wr * azimuth.w[k];
        c.s = s;
        cells.push_back(c);
      }
    }
    return cells;
  }
  const NodeSet polar = gauss_nodes(-1.0, 1.0, res.polar);
  cells.reserve(radial.size() * polar.size() * azimuth.size());
  for (std::size_t i = 0; i < radial.size(); ++i) {
    const double s = radial.x[i];
    const double sh = std::sinh(s);
    const double wr = radial.w[i] * sh * sh;
    for (std::size_t j = 0; j < polar.size(); ++j) {
      const double cz = polar.x[j];
      const double sz = std::sqrt(std::max(0.0, 1.0 - cz * cz));
      for (std::size_t k = 0; k < azimuth.size(); ++k) {
        const double b = azimuth.x[k];
        BallCell c;
        c.hyper = place(s, {sz * std::cos(b), sz * std::sin(b), cz});
        c.point = from_hyperboloid(3, c.hyper);
        c.weight = wr * polar.w[j] * azimuth.w[k];
        c.s = s;
        cells.push_back(c);
      }
    }
  }
  return cells;
}

double relativized_mass(const HyperbolicModel& m, const InitialData& data) {
  if (data.is_zero()) return 0.0;
  if (data.symmetry() == Symmetry::radial) {
    return radial_mass(m, [&](double r) { return data.profile(r); }, data.truncation_radius());
  }
  if (data.symmetry() == Symmetry::general) throw std::invalid_argument("mass of general data is not supported");
  const CellResolution res = m.dimension() == 2 ? CellResolution{40, 0, 64} : CellResolution{32, 32, 32};
  const std::vector<BallCell> cells = ball_cells(m.dimension(), data.support_ball(), res);
  double acc = 0.0;
  for (const BallCell& c : cells) acc += c.weight * data.profile(c.s) * std::exp(2.0 * log_phi0(m, c.point.r));
  return acc;
}

}  // namespace brownloop
