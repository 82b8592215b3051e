// Acceptance runner: one PASS/FAIL line per criterion.
//   brownloop_acceptance            run all
//   brownloop_acceptance 3 7        run criteria 3 and 7
// Exit status is 0 only if every selected criterion passes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "brownloop/doob.hpp"
#include "brownloop/evolve.hpp"
#include "brownloop/hkernel.hpp"
#include "brownloop/initial_data.hpp"
#include "brownloop/loopmc.hpp"

using namespace brownloop;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    pass = pass && ok;
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
  }
  void info(const std::string& what) { notes.push_back("info: " + what); }
};

std::string g(double v) { return fmt::format("{:.6g}", v); }

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log10(x[i]), ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + g(x);
  return "[" + s + "]";
}

const HyperbolicModel& h2() { return HyperbolicModel::h2(); }
const HyperbolicModel& h3() { return HyperbolicModel::h3(); }

// 1. h~ collapses to the Euclidean Gaussian in H^3.
Outcome gaussian_collapse() {
  Outcome o;
  const HyperbolicModel& m = h3();
  double worst = 0.0;
  for (double t : {0.5, 1.0, 10.0, 100.0})
    for (double r : linspace(0.0, 20.0, 50)) {
      const double htilde = heat_kernel(m, t, r) * std::exp(m.rho_sq() * t) / phi0(m, r);
      worst = std::max(worst, std::abs(htilde * std::pow(4.0 * kPi * t, 1.5) * std::exp(r * r / (4.0 * t)) - 1.0));
    }
  o.require(worst < 1e-12, "max |h~ (4 pi t)^{3/2} e^{r^2/4t} - 1| = " + g(worst) + " < 1e-12");
  return o;
}

// 2. Spectral inversion agrees with the H^3 closed form.
Outcome inversion_consistency() {
  Outcome o;
  const HyperbolicModel& m = h3();
  double worst = 0.0;
  int count = 0;
  for (double t : geomspace(0.5, 50.0, 20))
    for (double r : linspace(0.0, 4.0 * std::sqrt(t), 10)) {
      const double exact = std::exp(log_shifted_heat_kernel_h3(t, r));
      const double inv = heat_kernel_inversion(m, t, r).value;
      worst = std::max(worst, std::abs(inv / exact - 1.0));
      ++count;
    }
  o.require(count == 200 && worst < 1e-8, "max relative error over " + std::to_string(count) + " points = " + g(worst) +
                                              " < 1e-8");
  return o;
}

// 3. h~_t(o, .) is a probability density for mu~.
Outcome normalization() {
  Outcome o;
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    for (double t : {1.0, 10.0, 100.0}) {
      const double err = std::abs(check_normalization(s, t).value - 1.0);
      o.require(err < 1e-6, m->name() + " t=" + g(t) + ": |mass - 1| = " + g(err));
    }
  }
  return o;
}

// 4. t^{(nu+n)/4} ||h~_t||_inf.
Outcome sup_norm_law() {
  Outcome o;
  {
    const RelativizedSpace s(h3());
    const double target = std::pow(4.0 * kPi, -1.5);
    for (double t : {10.0, 100.0, 1000.0}) {
      const double v = std::pow(t, sup_scaling_exponent(h3())) * relativized_sup_norm(s, t).value;
      o.require(std::abs(v - target) < 1e-8, "h3 t=" + g(t) + ": t^{3/2} sup = " + fmt::format("{:.12g}", v) +
                                                 " vs (4 pi)^{-3/2} = " + fmt::format("{:.12g}", target));
    }
  }
  {
    const RelativizedSpace s(h2());
    const double e = sup_scaling_exponent(h2());
    std::vector<double> scaled, half_nu;
    for (double t : geomspace(10.0, 1000.0, 9)) {
      const double sup = relativized_sup_norm(s, t).value;
      scaled.push_back(std::pow(t, e) * sup);
      half_nu.push_back(std::pow(t, 1.5) * sup);
    }
    const auto [lo, hi] = std::minmax_element(scaled.begin(), scaled.end());
    o.require(*hi / *lo <= 2.0, "h2: t^{5/4} sup over [10, 1000] spans factor " + g(*hi / *lo) + " (band 2)");
    const auto [lo2, hi2] = std::minmax_element(half_nu.begin(), half_nu.end());
    o.info("h2: t^{nu/2} = t^{3/2} scaling spans factor " + g(*hi2 / *lo2) + " over the same grid");
  }
  return o;
}

// 5. L1 convergence for the off-center bump in H^3.
Outcome l1_offcenter() {
  Outcome o;
  const RelativizedSpace s(h3());
  const InitialData f = offcenter_bump(h3());
  const std::vector<double> ts{10.0, 100.0, 1000.0};
  std::vector<double> l1;
  for (double t : ts) l1.push_back(l1_distance(s, f, t));
  const double k = slope(ts, l1);
  o.require(strictly_decreasing(l1), "L1 " + list(l1) + " strictly decreasing");
  o.require(l1.back() < 0.05, "final L1 " + g(l1.back()) + " < 0.05");
  o.require(k >= -0.8 && k <= -0.2, "log-log slope " + g(k) + " in [-0.8, -0.2]");
  return o;
}

// 6. Scaled sup distance for the radial and off-center bumps in H^3.
Outcome linf_scaled() {
  Outcome o;
  const RelativizedSpace s(h3());
  const std::vector<double> ts{10.0, 100.0, 1000.0};
  for (const auto& [f, bound] : {std::pair{radial_bump(h3()), 1e-2}, std::pair{offcenter_bump(h3()), 0.05}}) {
    std::vector<double> v;
    for (double t : ts) v.push_back(linf_scaled_distance(s, f, t));
    o.require(strictly_decreasing(v), f.name() + ": t^{3/2} sup " + list(v) + " strictly decreasing");
    o.require(v.back() < bound, f.name() + ": final " + g(v.back()) + " < " + g(bound));
  }
  return o;
}

// 7. Ratio gap decays like r(t)/t with r(t) = sqrt t.
Outcome ratio_gap_rate() {
  Outcome o;
  const std::vector<double> ts{1e2, 1e3, 1e4};
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    std::vector<double> gap;
    for (double t : ts) gap.push_back(ratio_gap_sup(*m, t, std::sqrt(t), 1.0).value);
    const double k = slope(ts, gap);
    o.require(strictly_decreasing(gap), m->name() + ": sup gap " + list(gap) + " decreasing");
    o.require(k >= -0.65 && k <= -0.35, m->name() + ": slope " + g(k) + " in [-0.65, -0.35]");
  }
  return o;
}

// 8. The mass function of radial data is constant.
Outcome mass_constancy() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> radius(0.0, 5.0), unit(0.0, 1.0);
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const InitialData f = radial_bump(*m);
    const double c = mass_constant_radial(s, f);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      SpacePoint p{radius(rng), 0.0, 0.0};
      if (m->dimension() == 2) {
        p.theta = 2.0 * kPi * unit(rng);
      } else {
        p.theta = std::acos(1.0 - 2.0 * unit(rng));
        p.phi = 2.0 * kPi * unit(rng);
      }
      worst = std::max(worst, std::abs(mass_function(s, f, p) - c));
    }
    o.require(worst < 1e-6, m->name() + ": max |M(g) - M| over 20 points = " + g(worst));
  }
  return o;
}

// 9. Concentration in the critical regions.
Outcome concentration() {
  Outcome o;
  const EpsilonSchedule eps = EpsilonSchedule::power(0.25);
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const double early = concentration_outside_omega(s, 1e2, eps).value;
    const double late = concentration_outside_omega(s, 1e4, eps).value;
    o.require(late < 0.1 && late < early,
              m->name() + ": outside Omega " + g(early) + " (t=1e2) -> " + g(late) + " (t=1e4)");
  }
  const RelativizedSpace s(h3());
  const double v = linf_outside_R(s, 1e4, eps).value;
  const double exact = std::pow(4.0 * kPi, -1.5) * std::exp(-25.0);
  o.require(std::abs(v / exact - 1.0) < 1e-8,
            "h3 t=1e4: sup outside R " + fmt::format("{:.12g}", v) + " vs " + fmt::format("{:.12g}", exact));
  return o;
}

// 10. Simulated loop radius matches the Bessel(3) law.
Outcome monte_carlo_loop() {
  Outcome o;
  const RelativizedSpace s(h3());
  MCConfig cfg;
  cfg.n_paths = 100000;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  const EmpiricalSample e = simulate_loop(h3(), cfg);
  const LoopMarginal law(s, 1.0);
  const double ks = ks_distance(e, [&law](double r) { return law.cdf(r); });
  o.require(std::abs(e.mean_square() - 6.0) < 0.05, "mean r^2 = " + g(e.mean_square()) + " (6 +- 0.05)");
  o.require(ks < 0.01, "KS = " + g(ks) + " < 0.01");
  o.info("reflections = " + std::to_string(e.reflections));
  return o;
}

// 11. Bridge radial law tends to the loop law.
Outcome bridge_limit() {
  Outcome o;
  const RelativizedSpace s(h3());
  std::vector<double> gaps;
  for (const BridgeGap& b : bridge_to_loop_gap(s, {10.0, 50.0, 250.0}, 1.0, 5.0)) gaps.push_back(b.gap);
  o.require(strictly_decreasing(gaps), "sup gaps " + list(gaps) + " strictly decreasing");
  o.require(gaps.back() < 0.05, "gap at L=250 " + g(gaps.back()) + " < 0.05");
  return o;
}

// 12. Doob transform identities.
Outcome doob_identities() {
  Outcome o;
  auto f = [](double r) { return std::exp(-r * r) * (1.0 + r); };
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> radius(0.0, 20.0), unit(0.0, 1.0);
  for (const HyperbolicModel* m : {&h2(), &h3()}) {
    const RelativizedSpace s(*m);
    const double coarse = relativized_generator_apply(s, f, {0.5, 5.0, 256}).max_discrepancy;
    const double fine = relativized_generator_apply(s, f, {0.5, 5.0, 512}).max_discrepancy;
    o.require(coarse / fine >= 3.5 && coarse / fine <= 4.5,
              m->name() + ": generator discrepancy ratio on halving = " + g(coarse / fine));
    const double sg = semigroup_identity_check(s, 1.0, radial_bump(*m)).residual;
    o.require(sg < 1e-8, m->name() + ": semigroup residual " + g(sg));
    double prod = 0.0;
    for (const auto& [x, y] : {std::pair{SpacePoint{1.0, 0.0, 0.0}, SpacePoint{2.0, 1.0, 0.5}},
                               std::pair{SpacePoint{0.3, 2.0, 1.0}, SpacePoint{4.0, 0.4, 3.0}}})
      prod = std::max(prod, std::abs(phi0_product_check(*m, x, y)));
    o.require(prod < 1e-8, m->name() + ": phi0 product residual " + g(prod));
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
      SpacePoint p{radius(rng), 0.0, 0.0};
      if (m->dimension() == 2) {
        p.theta = 2.0 * kPi * unit(rng);
      } else {
        p.theta = std::acos(1.0 - 2.0 * unit(rng));
        p.phi = 2.0 * kPi * unit(rng);
      }
      if (busemann_rho(*m, p) > m->rho() * p.r + 1e-12 * (1.0 + p.r)) ++violations;
    }
    o.require(violations == 0, m->name() + ": Iwasawa-Cartan violations " + std::to_string(violations) + "/1000");
  }
  return o;
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "h3_gaussian_collapse", gaussian_collapse},
      {2, "h3_inversion_consistency", inversion_consistency},
      {3, "normalization", normalization},
      {4, "sup_norm_law", sup_norm_law},
      {5, "l1_offcenter_convergence", l1_offcenter},
      {6, "linf_scaled_convergence", linf_scaled},
      {7, "ratio_gap_rate", ratio_gap_rate},
      {8, "radial_mass_constancy", mass_constancy},
      {9, "concentration", concentration},
      {10, "monte_carlo_loop", monte_carlo_loop},
      {11, "bridge_to_loop", bridge_limit},
      {12, "doob_identities", doob_identities},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool all_pass = true;
  for (const Criterion& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %02d %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, sec);
    for (const std::string& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
    all_pass = all_pass && o.pass;
  }
  return all_pass ? 0 : 1;
}
