#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <map>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "brownloop/doob.hpp"
#include "brownloop/evolve.hpp"
#include "brownloop/hkernel.hpp"
#include "brownloop/initial_data.hpp"
#include "brownloop/loopmc.hpp"
#include "brownloop/rootsys.hpp"
#include "output.hpp"

namespace brownloop::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for invalid model/subcommand pairings and similar domain problems.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  std::string model = "h3";
  std::string out_dir;
  double eps_gamma = 0.25;
  double eps_scale = 1.0;
  int workers = 1;
  bool plot = false;
  int nodes = 24;
  double tolerance = 1e-10;
};

struct Run {
  const Global& g;
  std::ostream& out;
  fs::path dir;
  json results = json::object();
  std::shared_ptr<const HyperbolicModel> owned;

  EpsilonSchedule eps() const { return EpsilonSchedule::power(g.eps_gamma, g.eps_scale); }

  const HyperbolicModel& model(const std::string& command) {
    if (g.model != "h2" && g.model != "h3")
      throw DomainError("model '" + g.model + "' has no heat kernel; '" + command + "' needs h2 or h3");
    const QuadratureSpec defaults;
    if (g.nodes == defaults.node_count && g.tolerance == defaults.tolerance) return HyperbolicModel::by_name(g.model);
    if (!owned) {
      QuadratureSpec spec;
      spec.node_count = g.nodes;
      spec.tolerance = g.tolerance;
      owned = HyperbolicModel::create(g.model == "h2" ? 2 : 3, spec);
    }
    return *owned;
  }

  void save(const Table& t, const std::string& file, const PlotSpec& plot) const {
    t.write(dir / file);
    if (g.plot) write_plot_script(dir / file, t, plot);
  }
};

std::vector<double> radii(double r_max, int count) {
  if (count < 2) throw std::invalid_argument("r-count must be at least 2");
  if (!(r_max > 0.0)) throw std::invalid_argument("r-max must be positive");
  return linspace(0.0, r_max, count);
}

double fitted_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log10(x[i]);
    const double ly = std::log10(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

SpacePoint parse_point(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("point '" + text + "' must be r,theta,phi");
    }
  }
  if (v.empty() || v.size() > 3) throw std::invalid_argument("point '" + text + "' must be r,theta,phi");
  v.resize(3, 0.0);
  return {v[0], v[1], v[2]};
}

// --- subcommands ------------------------------------------------------------

struct StructureOpts {
  std::vector<double> t{100.0};
};

void run_structure(Run& run, const StructureOpts& o) {
  const RootDatum d = RootDatum::by_name(run.g.model);
  const Dimensions dims = dimensions(d);
  const double rho = std::sqrt(d.rho_norm_sq());
  run.out << fmt::format("model {}: l={} n={} nu={} |rho|={}\n", d.name(), d.rank(), dims.n, dims.nu,
                         format_number(rho));
  Table table({"model", "rank", "n", "nu", "rho_norm", "t", "eps", "inner", "outer", "degenerate"});
  const EpsilonSchedule eps = run.eps();
  for (double t : o.t) {
    const RegionRadii rr = region_radii(t, eps);
    table.row({d.name(), cell(d.rank()), cell(dims.n), cell(dims.nu), cell(rho), cell(t), cell(eps(t)),
               cell(rr.inner), cell(rr.outer), cell(rr.degenerate())});
    run.out << fmt::format("  t={} eps={} inner={} outer={}{}\n", format_number(t), format_number(eps(t)),
                           format_number(rr.inner), format_number(rr.outer), rr.degenerate() ? " (degenerate)" : "");
  }
  run.save(table, "report.csv", {"region radii", "t", {"inner", "outer"}, true, true});
  run.results = {{"rank", d.rank()}, {"n", dims.n}, {"nu", dims.nu}, {"rho_norm", rho}};
}

struct KernelOpts {
  std::vector<double> t{1.0};
  double r_max = 10.0;
  int r_count = 101;
};

void run_kernel(Run& run, const KernelOpts& o) {
  const HyperbolicModel& m = run.model("kernel");
  Table table({"t", "r", "h_t", "envelope_lo", "envelope_hi", "phi0"});
  for (double t : o.t) {
    for (double r : radii(o.r_max, o.r_count)) {
      const Bracket env = heat_kernel_envelope(m, t, r);
      table.row({cell(t), cell(r), cell(heat_kernel(m, t, r)), cell(env.lower), cell(env.upper), cell(phi0(m, r))});
    }
  }
  run.save(table, "report.csv", {"heat kernel", "r", {"h_t", "envelope_lo", "envelope_hi"}, false, true});
  run.out << fmt::format("kernel {}: {} rows\n", m.name(), table.size());
  run.results = {{"rows", table.size()}};
}

struct RatioGapOpts {
  std::vector<double> t{1e2, 1e3, 1e4};
  double xi = 1.0;
  double g_radius = -1.0;  // negative selects sqrt(t)
};

void run_ratiogap(Run& run, const RatioGapOpts& o) {
  const HyperbolicModel& m = run.model("ratiogap");
  Table table({"t", "g_radius", "sup_gap", "y_r", "y_theta"});
  std::vector<double> ts, gaps;
  for (double t : o.t) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const double gr = o.g_radius < 0.0 ? std::sqrt(t) : o.g_radius;
    const RatioGapSup s = ratio_gap_sup(m, t, gr, o.xi);
    table.row({cell(t), cell(gr), cell(s.value), cell(s.y.r), cell(s.y.theta)});
    ts.push_back(t);
    gaps.push_back(s.value);
  }
  run.save(table, "report.csv", {"ratio gap", "t", {"sup_gap"}, true, true});
  run.results = {{"rows", table.size()}};
  if (ts.size() >= 2 && std::all_of(gaps.begin(), gaps.end(), [](double v) { return v > 0.0; })) {
    const double slope = fitted_slope(ts, gaps);
    run.results["slope"] = slope;
    run.out << fmt::format("ratiogap {}: fitted slope {}\n", m.name(), format_number(slope));
  } else {
    run.out << fmt::format("ratiogap {}: {} rows\n", m.name(), table.size());
  }
}

struct RelativizedOpts {
  std::vector<double> t{1.0, 10.0, 100.0};
  double r_max = 0.0;  // 0 selects 6 sqrt(t) + 10 per time
  int r_count = 201;
};

void run_relativized(Run& run, const RelativizedOpts& o) {
  const RelativizedSpace s(run.model("relativized"));
  Table table({"t", "r", "htilde", "w"});
  json norms = json::array();
  for (double t : o.t) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const double top = o.r_max > 0.0 ? o.r_max : 6.0 * std::sqrt(t) + 10.0;
    for (double r : radii(top, o.r_count))
      table.row({cell(t), cell(r), cell(relativized_kernel_origin(s, t, r)), cell(s.density(r))});
    norms.push_back({{"t", t}, {"normalization", check_normalization(s, t).value}});
  }
  run.save(table, "report.csv", {"relativized kernel", "r", {"htilde"}, false, true});
  run.out << fmt::format("relativized {}: {} rows\n", s.model().name(), table.size());
  run.results = {{"rows", table.size()}, {"normalization", norms}};
}

struct ChecksOpts {
  std::vector<double> t{1.0, 10.0, 100.0};
  int points = 1000;
  std::uint64_t seed = 7;
};

void run_checks(Run& run, const ChecksOpts& o) {
  const HyperbolicModel& m = run.model("checks");
  const RelativizedSpace s(m);
  Table table({"check", "parameter", "residual", "tolerance", "pass"});
  int passed = 0;
  auto record = [&](const std::string& name, const std::string& param, double residual, double tol, bool ok) {
    table.row({name, param, cell(residual), cell(tol), cell(ok)});
    passed += ok ? 1 : 0;
  };
  for (double t : o.t) {
    const double r = std::abs(check_normalization(s, t).value - 1.0);
    record("normalization", "t=" + format_number(t), r, 1e-6, r < 1e-6);
  }
  {
    auto f = [](double r) { return std::exp(-r * r) * (1.0 + r); };
    const double coarse = relativized_generator_apply(s, f, {0.5, 5.0, 256}).max_discrepancy;
    const double fine = relativized_generator_apply(s, f, {0.5, 5.0, 512}).max_discrepancy;
    const double ratio = coarse / fine;
    record("generator_halving_ratio", "intervals=256/512", ratio, 0.5, ratio >= 3.5 && ratio <= 4.5);
  }
  {
    const SemigroupResult sg = semigroup_identity_check(s, 1.0, radial_bump(m));
    record("semigroup", "t=1", sg.residual, 1e-8, sg.residual < 1e-8);
  }
  {
    const double ck = std::abs(chapman_kolmogorov_residual(s, 0.5, 0.5, 1.0));
    record("chapman_kolmogorov", "s=t=0.5,r=1", ck, 1e-8, ck < 1e-8);
  }
  {
    const double pr = std::abs(phi0_product_check(m, {1.0, 0.0, 0.0}, {2.0, 1.0, 0.5}));
    record("phi0_product", "x=(1,0,0),y=(2,1,0.5)", pr, 1e-8, pr < 1e-8);
  }
  {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> radius(0.0, 20.0), unit(0.0, 1.0);
    int violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < o.points; ++i) {
      SpacePoint p{radius(rng), 0.0, 0.0};
      if (m.dimension() == 2) {
        p.theta = 2.0 * std::numbers::pi * unit(rng);
      } else {
        p.theta = std::acos(1.0 - 2.0 * unit(rng));
        p.phi = 2.0 * std::numbers::pi * unit(rng);
      }
      const double excess = busemann_rho(m, p) - m.rho() * p.r;
      worst = std::max(worst, excess);
      if (excess > 1e-12 * (1.0 + p.r)) ++violations;
    }
    record("iwasawa_cartan", "points=" + std::to_string(o.points), worst, 0.0, violations == 0);
  }
  run.save(table, "report.csv", {"checks", "check", {"residual"}, false, true});
  run.out << fmt::format("checks {}: {}/{} passed\n", m.name(), passed, table.size());
  run.results = {{"passed", passed}, {"total", table.size()}};
}

struct ConvergeOpts {
  std::string data = "radial";
  std::vector<double> tgrid{10.0, 100.0, 1000.0};
  std::vector<double> p{2.0};
};

void run_converge(Run& run, const ConvergeOpts& o) {
  const HyperbolicModel& m = run.model("converge");
  const RelativizedSpace s(m);
  const InitialData f = data_by_name(m, o.data);
  EvolveOptions eo;
  eo.worker_count = run.g.workers;
  eo.eps = run.eps();
  const ConvergenceReport rep = run_convergence_experiment(s, f, o.tgrid, o.p, eo);
  std::vector<std::string> header{"t", "l1", "linf_scaled"};
  for (double p : o.p) header.push_back("lp_" + format_number(p));
  header.insert(header.end(), {"mass", "tail_bound"});
  Table table(header);
  json timings = json::array();
  for (const ConvergenceRow& r : rep.rows) {
    std::vector<std::string> c{cell(r.t), cell(r.l1), cell(r.linf_scaled)};
    for (double v : r.lp) c.push_back(cell(v));
    c.push_back(cell(r.mass));
    c.push_back(cell(r.tail_bound));
    table.row(c);
    timings.push_back({{"t", r.t}, {"seconds", r.seconds}});
  }
  run.save(table, "report.csv", {"convergence " + o.data, "t", {"l1", "linf_scaled"}, true, true});
  run.results = {{"rows", rep.rows.size()}, {"timings", timings}};
  if (rep.rows.size() >= 2) {
    std::vector<double> ts, l1;
    for (const auto& r : rep.rows) {
      ts.push_back(r.t);
      l1.push_back(r.l1);
    }
    if (std::all_of(l1.begin(), l1.end(), [](double v) { return v > 0.0; })) run.results["l1_slope"] = fitted_slope(ts, l1);
  }
  run.out << fmt::format("converge {} {}: {} rows\n", m.name(), o.data, rep.rows.size());
}

struct MassOpts {
  std::string data = "radial";
  std::vector<std::string> at{"0,0,0"};
};

void run_mass(Run& run, const MassOpts& o) {
  const HyperbolicModel& m = run.model("mass");
  const RelativizedSpace s(m);
  const InitialData f = data_by_name(m, o.data);
  Table table({"r", "theta", "phi", "mass"});
  for (const std::string& text : o.at) {
    const SpacePoint p = parse_point(text);
    const double v = mass_function(s, f, p);
    table.row({cell(p.r), cell(p.theta), cell(p.phi), cell(v)});
    run.out << fmt::format("M({},{},{}) = {}\n", format_number(p.r), format_number(p.theta), format_number(p.phi),
                           format_number(v));
  }
  run.save(table, "report.csv", {"mass function", "r", {"mass"}, false, false});
  run.results = {{"rows", table.size()}};
  if (f.symmetry() == Symmetry::radial) run.results["mass_constant"] = mass_constant_radial(s, f);
}

struct RegionOpts {
  std::vector<double> t{100.0};
  double r_max = 0.0;  // 0 selects 1.5 sqrt(t)/eps(t) per time
  int r_count = 201;
};

void run_region(Run& run, const RegionOpts& o) {
  const RootDatum d = RootDatum::by_name(run.g.model);
  const EpsilonSchedule eps = run.eps();
  // Rank one walks along the root; higher rank along the rho direction.
  std::vector<double> dir = d.rho();
  const double norm = std::sqrt(inner(dir, dir));
  for (double& x : dir) x /= norm;
  Table table({"t", "r", "in_omega", "in_omega_double_prime", "in_R"});
  json per_t = json::array();
  const bool hyperbolic = run.g.model == "h2" || run.g.model == "h3";
  for (double t : o.t) {
    if (!(t > 0.0)) throw std::invalid_argument("t must be positive");
    const double top = o.r_max > 0.0 ? o.r_max : 1.5 * std::sqrt(t) / eps(t);
    for (double r : radii(top, o.r_count)) {
      std::vector<double> c(dir);
      for (double& x : c) x *= r;
      const ChamberPoint h = d.rank() == 1 ? ChamberPoint::radial(d, r) : ChamberPoint(d, c);
      table.row({cell(t), cell(r), cell(in_omega_t(d, h, t, eps)), cell(in_omega_double_prime(d, h, t, eps)),
                 cell(in_R_t(d, h, t, eps))});
    }
    json entry = {{"t", t}};
    if (hyperbolic) {
      const RelativizedSpace s(run.model("region"));
      const Concentration c = concentration_outside_omega(s, t, eps);
      const TailSup tail = linf_outside_R(s, t, eps);
      entry["concentration_outside_omega"] = c.value;
      entry["degenerate"] = c.degenerate;
      entry["linf_outside_R"] = tail.value;
      run.out << fmt::format("t={} concentration={} linf_outside_R={}\n", format_number(t), format_number(c.value),
                             format_number(tail.value));
    }
    per_t.push_back(entry);
  }
  run.save(table, "report.csv", {"regions", "r", {"in_omega", "in_R"}, false, false});
  run.out << fmt::format("region {}: {} rows\n", d.name(), table.size());
  run.results = {{"rows", table.size()}, {"times", per_t}};
}

struct McOpts {
  long long paths = 100000;
  double dt = 1e-3;
  double t_end = 1.0;
  double r0 = 0.0;
  std::uint64_t seed = 20240601;
  bool brownian = false;
};

void run_mcloop(Run& run, const McOpts& o) {
  const HyperbolicModel& m = run.model("mcloop");
  MCConfig cfg;
  cfg.n_paths = o.paths;
  cfg.dt = o.dt;
  cfg.t_end = o.t_end;
  cfg.r0 = o.r0;
  cfg.seed = o.seed;
  cfg.worker_count = run.g.workers;
  const EmpiricalSample e = o.brownian ? simulate_brownian(m, cfg) : simulate_loop(m, cfg);
  Table table({"path", "r"});
  for (std::size_t i = 0; i < e.radii.size(); ++i) table.row({cell(static_cast<long long>(i)), cell(e.radii[i])});
  run.save(table, "sample.csv", {"terminal radii", "path", {"r"}, false, false});
  run.results = {{"mean", e.mean()}, {"mean_r2", e.mean_square()}, {"reflections", e.reflections},
                 {"steps", e.steps}, {"process", o.brownian ? "brownian" : "loop"}};
  std::string extra;
  if (!o.brownian && o.r0 == 0.0) {
    const RelativizedSpace s(m);
    const LoopMarginal law(s, o.t_end);
    const double ks = ks_distance(e, [&law](double r) { return law.cdf(r); });
    run.results["ks"] = ks;
    extra = " ks=" + format_number(ks);
  }
  run.out << fmt::format("mcloop {}: mean_r2={}{} reflections={}\n", m.name(), format_number(e.mean_square()), extra,
                         e.reflections);
}

struct BridgeOpts {
  std::vector<double> L{10.0, 50.0, 250.0};
  double t = 1.0;
  double r_max = 0.0;
};

void run_bridge(Run& run, const BridgeOpts& o) {
  const RelativizedSpace s(run.model("bridge"));
  Table table({"L", "sup_gap", "argmax"});
  for (const BridgeGap& g : bridge_to_loop_gap(s, o.L, o.t, o.r_max)) {
    table.row({cell(g.L), cell(g.gap), cell(g.argmax)});
    run.out << fmt::format("L={} gap={}\n", format_number(g.L), format_number(g.gap));
  }
  run.save(table, "report.csv", {"bridge to loop", "L", {"sup_gap"}, true, true});
  run.results = {{"rows", table.size()}};
}

// Echo of every option: the given value, or the default when absent.
json echo_options(const CLI::App& app) {
  json j = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name == "help" || name == "config" || name.empty()) continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      j[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else {
      j[name] = opt->get_default_str();
    }
  }
  return j;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relativized heat kernels and Brownian loops on real hyperbolic spaces", "brownloop"};
  app.option_defaults()->always_capture_default();
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  if (const char* env = std::getenv("BROWNLOOP_OUT_DIR")) g.out_dir = env;
  if (g.out_dir.empty()) g.out_dir = ".";
  app.add_option("--model", g.model, "h2, h3, hN or a2 (a2 and hN: structure and region only)");
  app.add_option("--out-dir", g.out_dir, "output directory (default $BROWNLOOP_OUT_DIR or .)");
  app.add_option("--eps-gamma", g.eps_gamma, "eps(t) = scale * t^-gamma");
  app.add_option("--eps-scale", g.eps_scale);
  app.add_option("--workers", g.workers, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--plot", g.plot, "also write a gnuplot script next to the CSV");
  app.add_option("--nodes", g.nodes, "Gauss-Legendre nodes per panel");
  app.add_option("--tol", g.tolerance, "target relative quadrature tolerance");

  StructureOpts structure;
  auto* s_structure = app.add_subcommand("structure", "rank, n, nu, rho and region radii");
  s_structure->add_option("--t", structure.t)->delimiter(',');

  KernelOpts kernel;
  auto* s_kernel = app.add_subcommand("kernel", "heat kernel, envelope and phi0 on a radial grid");
  s_kernel->add_option("--t", kernel.t)->delimiter(',');
  s_kernel->add_option("--r-max", kernel.r_max);
  s_kernel->add_option("--r-count", kernel.r_count);

  RatioGapOpts ratiogap;
  auto* s_ratiogap = app.add_subcommand("ratiogap", "grid sup of the kernel ratio gap at |g| = sqrt t");
  s_ratiogap->add_option("--t", ratiogap.t)->delimiter(',');
  s_ratiogap->add_option("--xi", ratiogap.xi);
  s_ratiogap->add_option("--g-radius", ratiogap.g_radius, "negative selects sqrt(t)");

  RelativizedOpts relativized;
  auto* s_relativized = app.add_subcommand("relativized", "relativized kernel and measure density");
  s_relativized->add_option("--t", relativized.t)->delimiter(',');
  s_relativized->add_option("--r-max", relativized.r_max, "0 selects 6 sqrt(t) + 10");
  s_relativized->add_option("--r-count", relativized.r_count);

  ChecksOpts checks;
  auto* s_checks = app.add_subcommand("checks", "normalization, generator, semigroup and product checks");
  s_checks->add_option("--t", checks.t)->delimiter(',');
  s_checks->add_option("--points", checks.points, "random points for the Iwasawa-Cartan inequality");
  s_checks->add_option("--seed", checks.seed);

  ConvergeOpts converge;
  auto* s_converge = app.add_subcommand("converge", "long-time distances between u(t) and M h~_t");
  s_converge->add_option("--data", converge.data)->check(CLI::IsMember({"radial", "offcenter", "decaying"}));
  s_converge->add_option("--tgrid", converge.tgrid)->delimiter(',');
  s_converge->add_option("--p", converge.p)->delimiter(',');

  MassOpts mass;
  auto* s_mass = app.add_subcommand("mass", "mass function at points r,theta,phi");
  s_mass->add_option("--data", mass.data)->check(CLI::IsMember({"radial", "offcenter", "decaying"}));
  s_mass->add_option("--at", mass.at, "point r,theta,phi (repeatable)");

  RegionOpts region;
  auto* s_region = app.add_subcommand("region", "critical-region membership along a ray");
  s_region->add_option("--t", region.t)->delimiter(',');
  s_region->add_option("--r-max", region.r_max, "0 selects 1.5 sqrt(t)/eps(t)");
  s_region->add_option("--r-count", region.r_count);

  McOpts mc;
  auto* s_mc = app.add_subcommand("mcloop", "Monte Carlo of the loop radial process");
  s_mc->add_option("--paths", mc.paths);
  s_mc->add_option("--dt", mc.dt);
  s_mc->add_option("--t-end", mc.t_end);
  s_mc->add_option("--r0", mc.r0);
  s_mc->add_option("--seed", mc.seed);
  s_mc->add_flag("--brownian", mc.brownian, "simulate the Brownian comparator instead");

  BridgeOpts bridge;
  auto* s_bridge = app.add_subcommand("bridge", "sup gap between bridge and loop radial laws");
  s_bridge->add_option("--L", bridge.L)->delimiter(',');
  s_bridge->add_option("--t", bridge.t);
  s_bridge->add_option("--r-max", bridge.r_max, "0 selects 5 + 4 sqrt(t)");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  const auto start = std::chrono::steady_clock::now();
  try {
    fs::path dir(g.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw DomainError("output directory '" + g.out_dir + "' is not writable");
    Run run{g, out, dir};
    const std::string name = sub->get_name();
    if (name == "structure") run_structure(run, structure);
    else if (name == "kernel") run_kernel(run, kernel);
    else if (name == "ratiogap") run_ratiogap(run, ratiogap);
    else if (name == "relativized") run_relativized(run, relativized);
    else if (name == "checks") run_checks(run, checks);
    else if (name == "converge") run_converge(run, converge);
    else if (name == "mass") run_mass(run, mass);
    else if (name == "region") run_region(run, region);
    else if (name == "mcloop") run_mcloop(run, mc);
    else if (name == "bridge") run_bridge(run, bridge);
    json record = {{"command", name}, {"config", echo_options(app)}, {"options", echo_options(*sub)},
                   {"results", run.results}};
    record["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    append_summary(dir, record);
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace brownloop::cli
