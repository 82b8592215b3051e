#include "brownloop/hkernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace brownloop {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kSeriesCut = 1e-4;

double log_sinh(double x) {
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

// r / sinh r and its log, with the series below kSeriesCut.
double r_over_sinh(double r) {
  if (r < kSeriesCut) return 1.0 - r * r / 6.0;
  if (r > 700.0) return std::exp(std::log(r) - log_sinh(r));
  return r / std::sinh(r);
}

double log_r_over_sinh(double r) {
  if (r < kSeriesCut) return -r * r / 6.0;
  return std::log(r) - log_sinh(r);
}

double sinc(double x) {
  if (std::abs(x) < kSeriesCut) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) throw std::invalid_argument("t must be positive");
}

void check_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("r must be finite and >= 0");
}

// --- H^2 spherical function, Mehler form ---------------------------------
//
//   phi_lambda(r) = (sqrt 2/pi) int_0^r cos(lambda u) / sqrt(cosh r - cosh u) du
//                 = (4/pi) e^{-r/2} int_0^{sqrt r} cos(lambda (r - s^2)) g_r(s) ds,
//   g_r(s) = s / sqrt((1 - e^{-(2r - s^2)}) (1 - e^{-s^2})),
//
// obtained from the circle integral by u = r - s^2. g_r is smooth on [0, sqrt r].

double mehler_weight(double r, double s) {
  const double a = -std::expm1(-(2.0 * r - s * s));
  const double b = -std::expm1(-s * s);
  return s / std::sqrt(a * b);
}

struct MehlerLayout {
  int panels;
  int nodes;
};

MehlerLayout mehler_layout(double lambda, double r, int base) {
  const int panels = static_cast<int>(std::ceil(std::sqrt(r))) + 1;
  const int nodes = base + static_cast<int>(std::ceil(1.2 * std::abs(lambda) * r / panels));
  return {panels, nodes};
}

// int_0^{sqrt r} cos(lambda (r - s^2)) g_r(s) ds
double mehler_integral(double lambda, double r, int base) {
  const MehlerLayout lay = mehler_layout(lambda, r, base);
  return integrate_panels(
      [&](double s) { return std::cos(lambda * (r - s * s)) * mehler_weight(r, s); }, 0.0, std::sqrt(r),
      lay.panels, lay.nodes);
}

double mehler_abs_integral(double lambda, double r, int base) {
  const MehlerLayout lay = mehler_layout(lambda, r, base);
  return integrate_panels([&](double s) { return mehler_weight(r, s); }, 0.0, std::sqrt(r), lay.panels,
                          lay.nodes);
}

double h2_phi_small_r(double lambda, double r) { return 1.0 - (lambda * lambda + 0.25) * r * r / 4.0; }

double h2_log_phi0_direct(double r, int base) {
  if (r < 1e-6) return std::log(h2_phi_small_r(0.0, r));
  return std::log(4.0 / kPi) - 0.5 * r + std::log(mehler_integral(0.0, r, base));
}

double h3_phi(double lambda, double r) { return sinc(lambda * r) * r_over_sinh(r); }

// --- inversion-formula quadrature ----------------------------------------

struct SpectralLayout {
  int panels;
  int nodes;
  double cutoff;
};

SpectralLayout spectral_layout(const QuadratureSpec& spec, double t, double r) {
  const double cutoff = spec.spectral_cutoff(t);
  const double width = std::min(1.0, 1.0 / std::sqrt(t));
  const int panels = std::max(1, static_cast<int>(std::ceil(cutoff / width)));
  const int nodes = spec.node_count + static_cast<int>(std::ceil(0.6 * (cutoff / panels) * r));
  return {panels, nodes, cutoff};
}

// Unnormalized (C = 1) shifted kernel e^{rho^2 t} h_t(r) / C and its error estimate.
KernelEvaluation inversion_raw(int n, const QuadratureSpec& spec, double t, double r) {
  const SpectralLayout lay = spectral_layout(spec, t, r);
  const NodeSet lam = panel_nodes(0.0, lay.cutoff, lay.panels, lay.nodes);
  const double tail_gauss = std::exp(-t * lay.cutoff * lay.cutoff) / (2.0 * t);
  KernelEvaluation out;
  if (n == 3) {
    const double ros = r_over_sinh(r);
    double acc = 0.0;
    double abs_acc = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
      const double l = lam.x[i];
      const double w = lam.w[i] * l * l * std::exp(-t * l * l);
      acc += w * sinc(l * r);
      abs_acc += w;
    }
    out.value = acc * ros;
    out.error = 32.0 * kEps * abs_acc * ros + ros * lay.cutoff * tail_gauss;
    return out;
  }
  // H^2: double integral over (s, lambda) in Mehler variables.
  std::vector<double> weight(lam.size());
  double abs_w = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    const double l = lam.x[i];
    weight[i] = lam.w[i] * l * std::tanh(kPi * l) * std::exp(-t * l * l);
    abs_w += weight[i];
  }
  if (r < 1e-6) {
    double acc = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) acc += weight[i] * h2_phi_small_r(lam.x[i], r);
    out.value = acc;
    out.error = 32.0 * kEps * abs_w + tail_gauss;
    return out;
  }
  const double root = std::sqrt(r);
  const int s_panels = static_cast<int>(std::ceil(root)) + 1;
  const double s_width = root / s_panels;
  const int s_nodes = spec.node_count + static_cast<int>(std::ceil(1.2 * lay.cutoff * root * s_width));
  const NodeSet s = panel_nodes(0.0, root, s_panels, s_nodes);
  double acc = 0.0;
  double abs_s = 0.0;
  for (std::size_t j = 0; j < s.size(); ++j) {
    const double u = r - s.x[j] * s.x[j];
    double inner_sum = 0.0;
    for (std::size_t i = 0; i < lam.size(); ++i) inner_sum += weight[i] * std::cos(lam.x[i] * u);
    const double g = s.w[j] * mehler_weight(r, s.x[j]);
    acc += g * inner_sum;
    abs_s += g;
  }
  const double pre = (4.0 / kPi) * std::exp(-0.5 * r);
  out.value = pre * acc;
  // |phi_lambda| <= phi_0 bounds the tail.
  out.error = 32.0 * kEps * pre * abs_s * abs_w + pre * abs_s * tail_gauss;
  return out;
}

double analytic_sphere_area(int n) { return n == 2 ? 2.0 * kPi : 4.0 * kPi; }

}  // namespace

// --- QuadratureSpec ------------------------------------------------------

void QuadratureSpec::validate() const {
  if (node_count < 16) throw std::invalid_argument("quadrature node_count must be >= 16");
  if (!(tolerance > 0.0 && tolerance <= 1e-4))
    throw std::invalid_argument("quadrature tolerance must lie in (0, 1e-4]");
  if (!(lambda_max >= 0.0) || !(r_max >= 0.0))
    throw std::invalid_argument("quadrature truncations must be positive (0 selects automatic)");
}

double QuadratureSpec::spectral_cutoff(double t) const {
  if (lambda_max > 0.0) return lambda_max;
  const double k = std::max(8.0, std::sqrt(-std::log(tolerance) + 10.0));
  return k / std::sqrt(t);
}

double QuadratureSpec::spatial_cutoff(double t) const {
  if (r_max > 0.0) return r_max;
  return 6.0 * std::sqrt(t) + 10.0;
}

// --- HyperbolicModel -----------------------------------------------------

HyperbolicModel::HyperbolicModel(int n, QuadratureSpec spec)
    : n_(n), rho_(0.5 * (n - 1)), datum_(RootDatum::hyperbolic(n)), spec_(spec) {}

std::shared_ptr<const HyperbolicModel> HyperbolicModel::create(int n, QuadratureSpec spec) {
  if (n != 2 && n != 3) throw std::invalid_argument("only H^2 and H^3 are supported");
  spec.validate();
  std::shared_ptr<HyperbolicModel> m(new HyperbolicModel(n, spec));
  m->calibrate();
  return m;
}

const HyperbolicModel& HyperbolicModel::h2() {
  static const std::shared_ptr<const HyperbolicModel> model = create(2);
  return *model;
}

const HyperbolicModel& HyperbolicModel::h3() {
  static const std::shared_ptr<const HyperbolicModel> model = create(3);
  return *model;
}

const HyperbolicModel& HyperbolicModel::by_name(const std::string& name) {
  if (name == "h2" || name == "H2") return h2();
  if (name == "h3" || name == "H3") return h3();
  throw std::invalid_argument("unknown model '" + name + "' (expected h2 or h3)");
}

double HyperbolicModel::sphere_area() const { return analytic_sphere_area(n_); }

void HyperbolicModel::calibrate() {
  // 1. log phi0 table.
  if (n_ == 2) {
    const int base = spec_.node_count;
    auto direct = [base](double r) { return h2_log_phi0_direct(r, base); };
    log_phi0_ = ChebyshevTable(direct, 0.0, table_radius(), 128, 20);
    log_phi0_far_ = ChebyshevTable(direct, table_radius(), far_table_radius(), 120, 16);
  } else {
    log_phi0_ = ChebyshevTable(log_r_over_sinh, 0.0, table_radius(), 128, 20);
  }

  // 2. Plancherel scale from total mass 1 at t = 1. Nodes where the inversion
  //    sum sits on its rounding floor carry less than that floor and are dropped.
  {
    const double t = 1.0;
    const double r_top = spec_.spatial_cutoff(t);
    const NodeSet nodes = panel_nodes(0.0, r_top, static_cast<int>(std::ceil(2.0 * r_top)), spec_.node_count);
    double mass = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const double r = nodes.x[i];
      const KernelEvaluation k = inversion_raw(n_, spec_, t, r);
      if (!(k.value > 0.0) || k.error > k.value) continue;
      mass += nodes.w[i] * k.value * std::pow(std::sinh(r), n_ - 1);
    }
    mass *= std::exp(-rho_sq() * t) * sphere_area();
    if (!(mass > 0.0)) throw QuadratureError("normalization calibration failed");
    normalization_ = 1.0 / mass;
  }

  // 3. phi0 envelope: ratio phi0 / ((1+r) e^{-rho r}) over r in {0} u [0.1, 1e4].
  {
    std::vector<double> radii{0.0};
    for (double r : linspace(0.1, 30.0, 300)) radii.push_back(r);
    for (double r : geomspace(30.0, 1e4, 40)) radii.push_back(r);
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double r : radii) {
      const double ratio = std::exp(log_phi0(*this, r) + rho_ * r - std::log1p(r));
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    phi0_constants_ = {lo * (1.0 - 1e-9), hi * (1.0 + 1e-9)};
  }

  // 4. Heat-kernel envelope over t in [1, 100], r in [0, 4 sqrt t].
  {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (double t : geomspace(1.0, 100.0, 9)) {
      for (double r : linspace(0.0, 4.0 * std::sqrt(t), 17)) {
        const double log_h = log_shifted_heat_kernel(*this, t, r) - rho_sq() * t;
        const double shape = heat_kernel_envelope_shape(*this, t, r);
        const double ratio = std::exp(log_h - std::log(shape));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
      }
    }
    const double spread = hi - lo;
    kernel_constants_ = {(lo - 0.02 * spread) * (1.0 - 1e-9), (hi + 0.02 * spread) * (1.0 + 1e-9)};
  }
}

// --- spherical functions -------------------------------------------------

double spherical_phi(const HyperbolicModel& m, double lambda, double r) {
  check_radius(r);
  if (!std::isfinite(lambda)) throw std::invalid_argument("lambda must be finite");
  if (r == 0.0) return 1.0;
  if (m.dimension() == 3) return h3_phi(lambda, r);
  if (r < 1e-6) return h2_phi_small_r(lambda, r);
  const int base = m.quadrature().node_count;
  const double coarse = mehler_integral(lambda, r, base);
  const double fine = mehler_integral(lambda, r, 2 * base);
  const double scale = mehler_abs_integral(lambda, r, 2 * base);
  if (std::abs(coarse - fine) > m.quadrature().tolerance * scale)
    throw QuadratureError("spherical function quadrature did not converge");
  return (4.0 / kPi) * std::exp(-0.5 * r) * fine;
}

double log_phi0(const HyperbolicModel& m, double r) {
  check_radius(r);
  if (m.dimension() == 3) return log_r_over_sinh(r);
  if (r <= HyperbolicModel::table_radius()) return m.log_phi0_table()(r);
  if (r <= HyperbolicModel::far_table_radius()) return m.log_phi0_far_table()(r);
  return h2_log_phi0_direct(r, m.quadrature().node_count);
}

double phi0(const HyperbolicModel& m, double r) { return std::exp(log_phi0(m, r)); }

double log_phi0_derivative(const HyperbolicModel& m, double r) {
  check_radius(r);
  if (m.dimension() == 3) {
    if (r < 1e-3) return -r / 3.0 + r * r * r / 45.0;
    return 1.0 / r - 1.0 / std::tanh(r);
  }
  if (r <= HyperbolicModel::table_radius()) return m.log_phi0_table().derivative(r);
  if (r <= HyperbolicModel::far_table_radius()) return m.log_phi0_far_table().derivative(r);
  const double h = 1e-4 * r;
  const int base = m.quadrature().node_count;
  return (h2_log_phi0_direct(r + h, base) - h2_log_phi0_direct(r - h, base)) / (2.0 * h);
}

double plancherel_density(const HyperbolicModel& m, double lambda) {
  const double l = std::abs(lambda);
  if (m.dimension() == 3) return m.normalization_constant() * l * l;
  return m.normalization_constant() * l * std::tanh(kPi * l);
}

// --- heat kernels --------------------------------------------------------

KernelEvaluation heat_kernel_inversion(const HyperbolicModel& m, double t, double r) {
  check_time(t);
  check_radius(r);
  KernelEvaluation k = inversion_raw(m.dimension(), m.quadrature(), t, r);
  k.value *= m.normalization_constant();
  k.error *= m.normalization_constant();
  return k;
}

double log_shifted_heat_kernel_h3(double t, double r) {
  check_time(t);
  check_radius(r);
  return -1.5 * std::log(4.0 * kPi * t) + log_r_over_sinh(r) - r * r / (4.0 * t);
}

double log_shifted_heat_kernel_h2_abel(double t, double r) {
  check_time(t);
  check_radius(r);
  // s = r + v^2; the factor e^{-r^2/4t - r/2} is pulled out of the integral.
  auto integrand = [t, r](double v) {
    const double v2 = v * v;
    const double gauss = std::exp(-(2.0 * r * v2 + v2 * v2) / (4.0 * t) - 0.25 * v2);
    const double denom = std::sqrt(-std::expm1(-(2.0 * r + v2))) * std::sqrt(std::sinh(0.5 * v2));
    return (r + v2) * 2.0 * v * gauss / denom;
  };
  const double scale = std::min({1.0, std::pow(4.0 * t, 0.25), r > 0.0 ? std::sqrt(2.0 * t / r) : 1.0});
  const double v_max = std::min({std::sqrt(184.0), std::pow(184.0 * t, 0.25),
                                 r > 0.0 ? std::sqrt(92.0 * t / r) : std::sqrt(184.0)});
  std::vector<double> breaks{0.0};
  // Geometric grading toward the branch points at v = +-i sqrt(2r).
  const double knee = std::sqrt(2.0 * r);
  if (r > 0.0 && knee < 0.5 * scale) {
    for (double x = std::max(0.5 * knee, 1e-9); x < scale && x < v_max; x *= 2.0) breaks.push_back(x);
  }
  const double step = 0.5 * scale;
  double x = breaks.back();
  while (x + step < v_max) {
    x += step;
    breaks.push_back(x);
  }
  if (v_max > breaks.back()) breaks.push_back(v_max);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) acc += integrate_gauss(integrand, breaks[i], breaks[i + 1], 24);
  return 0.5 * std::log(2.0) - 1.5 * std::log(4.0 * kPi * t) - r * r / (4.0 * t) - 0.5 * r + std::log(acc);
}

double log_shifted_heat_kernel(const HyperbolicModel& m, double t, double r) {
  check_time(t);
  check_radius(r);
  if (m.dimension() == 3) return log_shifted_heat_kernel_h3(t, r);
  // The inversion sum loses about r^2/4t nats to cancellation; past that,
  // and for very short times, the positive Abel representation is used.
  if (t >= 0.01 && r * r / (4.0 * t) <= 10.0) {
    const KernelEvaluation k = heat_kernel_inversion(m, t, r);
    if (k.value > 0.0 && k.error <= m.quadrature().tolerance * k.value) return std::log(k.value);
  }
  return log_shifted_heat_kernel_h2_abel(t, r);
}

double heat_kernel(const HyperbolicModel& m, double t, double r) {
  return std::exp(log_shifted_heat_kernel(m, t, r) - m.rho_sq() * t);
}

double heat_kernel_envelope_shape(const HyperbolicModel& m, double t, double r) {
  check_time(t);
  check_radius(r);
  const double n = m.dimension();
  const double exponent = 0.5 * m.multiplicity() - 1.0;
  return std::exp(-0.5 * n * std::log(t) + exponent * std::log1p(t + r) + log_phi0(m, r) -
                  m.rho_sq() * t - r * r / (4.0 * t));
}

Bracket heat_kernel_envelope(const HyperbolicModel& m, double t, double r) {
  const double shape = heat_kernel_envelope_shape(m, t, r);
  return {m.kernel_constants().lower * shape, m.kernel_constants().upper * shape};
}

double hyperbolic_distance(const HyperbolicModel& m, const SpacePoint& p, const SpacePoint& q) {
  return hyperbolic_distance(m.dimension(), p, q);
}

double busemann_rho(const HyperbolicModel& m, const SpacePoint& p) { return m.rho() * busemann(m.dimension(), p); }

double ratio_gap(const HyperbolicModel& m, double t, const SpacePoint& g, const SpacePoint& y) {
  check_time(t);
  const double d = hyperbolic_distance(m, g, y);
  const double rg = g.r;
  if (d == rg) return 0.0;
  const double kernel_ratio = std::exp(log_shifted_heat_kernel(m, t, d) - log_shifted_heat_kernel(m, t, rg));
  const double phi_ratio = std::exp(log_phi0(m, d) - log_phi0(m, rg));
  return kernel_ratio - phi_ratio;
}

RatioGapSup ratio_gap_sup(const HyperbolicModel& m, double t, double g_radius, double xi) {
  check_time(t);
  if (!(g_radius >= 0.0) || !(xi > 0.0)) throw std::invalid_argument("ratio gap grid needs |g| >= 0 and xi > 0");
  RatioGapSup best;
  best.g = {g_radius, 0.0, 0.0};
  for (double s : linspace(0.0, xi, 11))
    for (double th : linspace(0.0, kPi, 13)) {
      const SpacePoint y{s, s == 0.0 ? 0.0 : th, 0.0};
      const double v = std::abs(ratio_gap(m, t, best.g, y));
      if (v > best.value) {
        best.value = v;
        best.y = y;
      }
    }
  return best;
}

double phi0_product_check(const HyperbolicModel& m, const SpacePoint& x, const SpacePoint& y, int nodes) {
  x.validate(m.dimension());
  y.validate(m.dimension());
  if (nodes < 8) throw std::invalid_argument("phi0_product_check needs at least 8 nodes");
  const double target = std::exp(log_phi0(m, x.r) + log_phi0(m, y.r));
  if (x.r == 0.0 || y.r == 0.0) return 0.0;
  // Rotating y over K sweeps the angle gamma between the two directions.
  auto average = [&](int count) {
    if (m.dimension() == 2) {
      const NodeSet ring = trapezoid_periodic(0.0, 2.0 * kPi, count);
      return integrate(ring, [&](double g) { return phi0(m, distance_from_cosine(x.r, y.r, std::cos(g))); }) /
             (2.0 * kPi);
    }
    return 0.5 * integrate_panels([&](double c) { return phi0(m, distance_from_cosine(x.r, y.r, c)); }, -1.0,
                                  1.0, 2, count / 2);
  };
  const double coarse = average(nodes);
  const double fine = average(2 * nodes);
  if (std::abs(coarse - fine) > 1e-3 * std::abs(fine) + 1e-12)
    throw QuadratureError("rotational average did not converge");
  return fine - target;
}

// --- KernelProfile -------------------------------------------------------

KernelProfile::KernelProfile(const HyperbolicModel& m, double t, double r_max) : model_(&m), t_(t), r_max_(r_max) {}

KernelProfile KernelProfile::shifted_heat(const HyperbolicModel& m, double t, double r_max) {
  check_time(t);
  if (!(r_max > 0.0)) throw std::invalid_argument("profile radius must be positive");
  KernelProfile p(m, t, r_max);
  if (m.has_closed_form()) return p;
  // Tabulate the slowly varying remainder q = log k - log phi0 + r^2/4t.
  const double width = std::clamp(0.5 * std::sqrt(t), 0.02, 4.0);
  const int panels = std::max(1, static_cast<int>(std::ceil(r_max / width)));
  p.table_ = ChebyshevTable(
      [&m, t](double r) { return log_shifted_heat_kernel(m, t, r) - log_phi0(m, r) + r * r / (4.0 * t); }, 0.0,
      r_max, panels, 16);
  return p;
}

double KernelProfile::log_value(double r) const {
  if (table_.empty()) {
    if (model_->dimension() == 3) return log_shifted_heat_kernel_h3(t_, r);
    return log_shifted_heat_kernel(*model_, t_, r);
  }
  if (r > r_max_) return log_shifted_heat_kernel(*model_, t_, r);
  return table_(r) + log_phi0(*model_, r) - r * r / (4.0 * t_);
}

double KernelProfile::value(double r) const { return std::exp(log_value(r)); }

}  // namespace brownloop
