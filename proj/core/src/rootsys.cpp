#include "brownloop/rootsys.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace brownloop {

namespace {

constexpr double kChamberSlack = 1e-12;

}  // namespace

double inner(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

RootDatum RootDatum::hyperbolic(int n) {
  if (n < 2) throw std::invalid_argument("hyperbolic space needs dimension n >= 2");
  return from_roots(1, {Root{{1.0}, n - 1, 0}}, "h" + std::to_string(n));
}

RootDatum RootDatum::a2() {
  const double s = std::sqrt(3.0) / 2.0;
  return from_roots(2, {Root{{1.0, 0.0}, 1, 0}, Root{{-0.5, s}, 1, 0}, Root{{0.5, s}, 1, 0}}, "a2");
}

RootDatum RootDatum::euclidean(int rank) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  RootDatum d;
  d.name_ = "r" + std::to_string(rank);
  d.rank_ = rank;
  d.derive();
  return d;
}

RootDatum RootDatum::from_roots(int rank, std::vector<Root> roots, std::string name) {
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (roots.empty()) throw std::invalid_argument("root list is empty");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Root& r = roots[i];
    if (static_cast<int>(r.vector.size()) != rank)
      throw std::invalid_argument("root vector length does not match the rank");
    if (r.multiplicity < 1 || r.multiplicity_double < 0)
      throw std::invalid_argument("root multiplicities must satisfy m_alpha >= 1, m_2alpha >= 0");
    if (inner(r.vector, r.vector) == 0.0) throw std::invalid_argument("zero vector in root list");
    for (std::size_t j = 0; j < i; ++j) {
      if (roots[j].vector == r.vector) throw std::invalid_argument("duplicate root in root list");
    }
  }
  RootDatum d;
  d.name_ = std::move(name);
  d.rank_ = rank;
  d.roots_ = std::move(roots);
  d.derive();
  return d;
}

RootDatum RootDatum::by_name(const std::string& name) {
  if (name == "a2") return a2();
  if (name.size() >= 2 && name[0] == 'h') {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 2) return hyperbolic(n);
  }
  throw std::invalid_argument("unknown root datum '" + name + "'");
}

void RootDatum::derive() {
  rho_.assign(rank_, 0.0);
  int total = 0;
  for (const Root& r : roots_) {
    total += r.multiplicity + r.multiplicity_double;
    for (int i = 0; i < rank_; ++i)
      rho_[i] += 0.5 * (r.multiplicity * r.vector[i] + r.multiplicity_double * 2.0 * r.vector[i]);
  }
  dims_.n = rank_ + total;
  dims_.nu = rank_ + 2 * static_cast<int>(roots_.size());
}

double RootDatum::rho_norm_sq() const { return inner(rho_, rho_); }

Dimensions dimensions(const RootDatum& d) { return d.dims(); }

ChamberPoint::ChamberPoint(const RootDatum& d, std::vector<double> coords) : coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != d.rank())
    throw std::invalid_argument("chamber point has the wrong number of coordinates");
  for (const Root& r : d.roots()) {
    if (inner(r.vector, coords_) < -kChamberSlack)
      throw std::invalid_argument("point lies outside the closed positive chamber");
  }
}

ChamberPoint ChamberPoint::radial(const RootDatum& d, double r) {
  if (d.rank() != 1) throw std::invalid_argument("radial chamber points need a rank-one datum");
  if (r < 0.0) throw std::invalid_argument("radius must be nonnegative");
  const double a = d.roots().front().vector[0];
  return ChamberPoint(d, {r / (a * a) * a});
}

double ChamberPoint::norm() const { return std::sqrt(inner(coords_, coords_)); }

double haar_density(const RootDatum& d, const ChamberPoint& h) {
  double acc = 1.0;
  for (const Root& r : d.roots()) {
    const double a = inner(r.vector, h.coords());
    acc *= std::pow(std::sinh(a), r.multiplicity);
    if (r.multiplicity_double > 0) acc *= std::pow(std::sinh(2.0 * a), r.multiplicity_double);
  }
  return acc;
}

double haar_density_envelope(const RootDatum& d, const ChamberPoint& h) {
  double acc = std::exp(2.0 * inner(d.rho(), h.coords()));
  for (const Root& r : d.roots()) {
    const double a = inner(r.vector, h.coords());
    acc *= std::pow(a / (1.0 + a), r.multiplicity);
    if (r.multiplicity_double > 0) acc *= std::pow(2.0 * a / (1.0 + 2.0 * a), r.multiplicity_double);
  }
  return acc;
}

double phi0_envelope_shape(const RootDatum& d, const ChamberPoint& h) {
  double acc = std::exp(-inner(d.rho(), h.coords()));
  for (const Root& r : d.roots()) acc *= 1.0 + inner(r.vector, h.coords());
  return acc;
}

Bracket phi0_envelope(const RootDatum& d, const ChamberPoint& h, const EnvelopeConstants& c) {
  const double shape = phi0_envelope_shape(d, h);
  return {c.lower * shape, c.upper * shape};
}

double mu_min(const RootDatum& d, const ChamberPoint& h) {
  if (d.roots().empty()) throw std::invalid_argument("mu is undefined for an empty root system");
  double best = std::numeric_limits<double>::infinity();
  for (const Root& r : d.roots()) best = std::min(best, inner(r.vector, h.coords()));
  return std::max(best, 0.0);
}

EpsilonSchedule EpsilonSchedule::power(double gamma, double scale) {
  if (!(gamma > 0.0 && gamma < 0.5))
    throw std::invalid_argument("epsilon schedule t^-gamma needs gamma in (0, 1/2)");
  if (!(scale > 0.0)) throw std::invalid_argument("epsilon schedule scale must be positive");
  return {gamma, scale};
}

double EpsilonSchedule::operator()(double t) const {
  if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
  return scale_ * std::pow(t, -gamma_);
}

EpsilonSchedule EpsilonSchedule::scaled(double factor) const { return {gamma_, scale_ * factor}; }

std::string EpsilonSchedule::describe() const {
  std::ostringstream os;
  if (scale_ != 1.0) os << scale_ << "*";
  os << "t^-" << gamma_;
  return os.str();
}

RegionRadii region_radii(double t, const EpsilonSchedule& eps) {
  const double e = eps(t);
  const double st = std::sqrt(t);
  return {e * st, st / e, e * st};
}

bool in_omega_t(const RootDatum& d, const ChamberPoint& h, double t, const EpsilonSchedule& eps) {
  const RegionRadii rr = region_radii(t, eps);
  const double norm = h.norm();
  if (norm < rr.inner || norm > rr.outer) return false;
  return mu_min(d, h) >= rr.wall;
}

bool in_omega_double_prime(const RootDatum& d, const ChamberPoint& h, double t, const EpsilonSchedule& eps) {
  return in_omega_t(d, h, t, eps.scaled(2.0));
}

bool in_R_t(const RootDatum&, const ChamberPoint& h, double t, const EpsilonSchedule& eps) {
  return h.norm() <= region_radii(t, eps).outer;
}

}  // namespace brownloop
