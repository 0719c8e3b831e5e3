#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "bmcx/acceptance.hpp"
#include "bmcx/engine.hpp"
#include "bmcx/green.hpp"
#include "bmcx/loewner.hpp"
#include "bmcx/poisson.hpp"
#include "bmcx/series.hpp"
#include "bmcx/stats.hpp"

namespace bmcx::cli {

namespace {

using nlohmann::json;

cplx parse_cplx(const std::string& s, const char* what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) fail(errc::parse_error, std::string(what) + ": expected re,im");
  try {
    std::size_t p1 = 0, p2 = 0;
    const double re = std::stod(s.substr(0, comma), &p1);
    const double im = std::stod(s.substr(comma + 1), &p2);
    if (p1 != comma || p2 != s.size() - comma - 1)
      fail(errc::parse_error, std::string(what) + ": bad number in '" + s + "'");
    return cplx(re, im);
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, std::string(what) + ": bad number in '" + s + "'");
  } catch (const std::out_of_range&) {
    fail(errc::parse_error, std::string(what) + ": number out of range in '" + s + "'");
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BMCX_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

struct CommonOpts {
  std::string domain;
  std::string start = "0,0";
  std::uint64_t paths = 10000;
  std::uint64_t seed = default_seed();
  double dt_max = 1e-3;
  double step_factor = 0.1;
  double eps = -1.0;
  std::string out;
  std::string format = "csv";

  SimConfig config() const {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.n_paths = paths;
    cfg.dt_max = dt_max;
    cfg.step_factor = step_factor;
    cfg.boundary_tol = eps;
    return cfg;
  }

  json config_json() const {
    return json{{"domain", domain},      {"start", start},
                {"paths", paths},        {"seed", seed},
                {"dt_max", dt_max},      {"step_factor", step_factor},
                {"eps", eps},            {"out", out},
                {"format", format}};
  }
};

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_domain) {
  if (needs_domain)
    cmd->add_option("--domain", o.domain,
                    "domain: disk:cx,cy,r | annulus:r,R | halfplane | righthalf | strip:a,b | "
                    "wedge:t1,t2 | triangle | cardioid")
        ->required();
  cmd->add_option("--start", o.start, "start point re,im");
  cmd->add_option("--paths", o.paths, "number of Monte Carlo paths");
  cmd->add_option("--seed", o.seed, "RNG seed (default from BMCX_SEED, else 0)");
  cmd->add_option("--dt-max", o.dt_max, "maximum time step");
  cmd->add_option("--step-factor", o.step_factor, "c in dt = min(dt_max, c d^2)");
  cmd->add_option("--eps", o.eps, "boundary tolerance (default 1e-4 * domain scale)");
  cmd->add_option("--out", o.out, "output CSV path");
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(errc::bad_config, "cannot open output file '" + path + "'");
  f << content;
}

void emit_summary(std::ostream& outs, const std::string& command, const json& config,
                  const json& mean, const json& stderr_, const json& count, double elapsed,
                  json data = json()) {
  json s{{"command", command}, {"config", config},           {"mean", mean},
         {"stderr", stderr_},  {"count", count},             {"elapsed_seconds", elapsed}};
  if (!data.is_null()) s["data"] = data;
  outs << s.dump() << "\n";
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
};

int run_exit_time(const CommonOpts& o, std::ostream& outs) {
  const Domain dom = parse_domain(o.domain);
  const cplx start = parse_cplx(o.start, "--start");
  const json cfgj = o.config_json();
  outs << json{{"command", "exit-time"}, {"config", cfgj}}.dump() << "\n";
  Timer timer;
  Engine eng;
  const auto records = eng.run_exit(dom, start, o.config(), nullptr, Chart::none, cplx(1.0),
                                    nullptr, true);
  if (!o.out.empty()) write_file(o.out, records_to_csv(records));
  std::vector<double> times;
  std::uint64_t censored = 0;
  for (const auto& r : records)
    r.censored ? static_cast<void>(++censored) : times.push_back(r.time);
  const auto est = summarize(times, censored);
  emit_summary(outs, "exit-time", cfgj, est.count ? json(est.mean) : json(),
               est.count ? json(est.stderr_) : json(), est.count, timer.elapsed());
  return est.count == 0 ? 3 : 0;
}

int run_measure(const CommonOpts& o, int nbins, std::ostream& outs) {
  const Domain dom = parse_domain(o.domain);
  const cplx start = parse_cplx(o.start, "--start");
  const json cfgj = o.config_json();
  outs << json{{"command", "measure"}, {"config", cfgj}, {"bins", nbins}}.dump() << "\n";
  Timer timer;
  Engine eng;
  const auto records = eng.run_exit(dom, start, o.config());
  BinCounts bins;
  if (dom.kind == Domain::Kind::disk) {
    bins = bin_arcs(records, dom.center, nbins);
  } else if (dom.kind == Domain::Kind::halfplane) {
    // equal-probability bins of the exact Cauchy exit law
    std::vector<double> edges;
    for (int k = 0; k <= nbins; ++k) {
      const double p = static_cast<double>(k) / nbins;
      edges.push_back(p == 0.0 ? -1e308
                               : (p == 1.0 ? 1e308
                                           : start.real() + start.imag() * std::tan(M_PI * (p - 0.5))));
    }
    std::vector<double> xs;
    for (const auto& r : records)
      if (!r.censored) xs.push_back(r.exit.real());
    bins = bin_by_edges(xs, edges);
  } else {
    fail(errc::unsupported_variant, "measure supports disk and halfplane domains");
  }
  std::string csv = "bin_lo,bin_hi,count,frequency\n";
  json data = json::array();
  char buf[160];
  for (std::size_t k = 0; k + 1 < bins.edges.size(); ++k) {
    const double f = bins.total ? static_cast<double>(bins.counts[k]) / bins.total : 0.0;
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%llu,%.17g\n", bins.edges[k], bins.edges[k + 1],
                  static_cast<unsigned long long>(bins.counts[k]), f);
    csv += buf;
    data.push_back(json{{"lo", bins.edges[k]}, {"hi", bins.edges[k + 1]},
                        {"count", bins.counts[k]}, {"frequency", f}});
  }
  if (!o.out.empty()) write_file(o.out, csv);
  emit_summary(outs, "measure", cfgj, json(), json(), bins.total, timer.elapsed(),
               o.format == "json" ? data : json());
  return bins.total == 0 ? 3 : 0;
}

std::function<double(cplx)> boundary_function(const std::string& kind) {
  if (kind == "one") return [](cplx) { return 1.0; };
  if (kind == "re") return [](cplx z) { return z.real(); };
  if (kind == "im") return [](cplx z) { return z.imag(); };
  if (kind == "cosarg") return [](cplx z) { return std::cos(std::atan2(z.imag(), z.real())); };
  if (kind.rfind("arc:", 0) == 0) {
    const auto comma = kind.find(',', 4);
    if (comma == std::string::npos) fail(errc::parse_error, "arc needs arc:lo,hi");
    const double lo = std::stod(kind.substr(4, comma - 4));
    const double hi = std::stod(kind.substr(comma + 1));
    return [lo, hi](cplx z) {
      const double a = std::atan2(z.imag(), z.real());
      return (a >= lo && a < hi) ? 1.0 : 0.0;
    };
  }
  fail(errc::parse_error, "unknown boundary function '" + kind + "'");
}

int run_dirichlet(const CommonOpts& o, const std::string& kind, std::ostream& outs) {
  const Domain dom = parse_domain(o.domain);
  const cplx start = parse_cplx(o.start, "--start");
  const auto fn = boundary_function(kind);
  const json cfgj = o.config_json();
  outs << json{{"command", "dirichlet"}, {"config", cfgj}, {"kind", kind}}.dump() << "\n";
  Timer timer;
  Engine eng;
  const auto est = eng.dirichlet(dom, start, fn, o.config());
  emit_summary(outs, "dirichlet", cfgj, est.count ? json(est.mean) : json(),
               est.count ? json(est.stderr_) : json(), est.count, timer.elapsed());
  return est.count == 0 ? 3 : 0;
}

int run_green(const std::string& kind, const std::string& zs, const std::string& ws, int n,
              std::ostream& outs) {
  const cplx z = parse_cplx(zs, "--z");
  const cplx w = parse_cplx(ws, "--w");
  Timer timer;
  double value = 0.0;
  if (kind == "halfplane")
    value = green_halfplane(z, w);
  else if (kind == "righthalf")
    value = green_right_halfplane(z, w);
  else if (kind == "disk")
    value = green_disk(z, w);
  else if (kind == "winding")
    value = green_winding(n, w);
  else
    fail(errc::parse_error, "unknown Green's function kind '" + kind + "'");
  const json cfgj{{"kind", kind}, {"z", zs}, {"w", ws}, {"n", n}};
  outs << json{{"command", "green"}, {"config", cfgj}}.dump() << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  outs << buf << "\n";
  emit_summary(outs, "green", cfgj, value, 0.0, 1, timer.elapsed());
  return 0;
}

int run_occupation(const CommonOpts& o, const std::string& grid_spec, const std::string& probe,
                   std::ostream& outs) {
  const Domain dom = parse_domain(o.domain);
  const cplx start = parse_cplx(o.start, "--start");
  // grid: cx,cy,halfwidth,cells
  double gx, gy, hw;
  int cells;
  if (std::sscanf(grid_spec.c_str(), "%lf,%lf,%lf,%d", &gx, &gy, &hw, &cells) != 4 || cells < 1 ||
      hw <= 0.0)
    fail(errc::parse_error, "--grid expects cx,cy,halfwidth,cells");
  const json cfgj = o.config_json();
  outs << json{{"command", "occupation"}, {"config", cfgj}, {"grid", grid_spec}}.dump() << "\n";
  Timer timer;
  OccGrid grid = OccGrid::around(cplx(gx, gy), hw, cells);
  Engine eng;
  eng.run_exit(dom, start, o.config(), &grid);
  std::string csv = "x,y,density\n";
  json data = json::array();
  char buf[128];
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const cplx cc = grid.cell_center(ix, iy);
      const double d = grid.density[static_cast<std::size_t>(iy) * grid.nx + ix];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", cc.real(), cc.imag(), d);
      csv += buf;
      if (o.format == "json") data.push_back(json{{"x", cc.real()}, {"y", cc.imag()}, {"density", d}});
    }
  }
  if (!o.out.empty()) write_file(o.out, csv);
  json mean;
  if (!probe.empty()) mean = grid.value_at(parse_cplx(probe, "--w"));
  emit_summary(outs, "occupation", cfgj, mean, json(), o.paths, timer.elapsed(),
               o.format == "json" ? data : json());
  return 0;
}

int run_winding(const CommonOpts& o, int n, const std::string& grid_spec, std::ostream& outs) {
  const cplx start = parse_cplx(o.start, "--start");
  const json cfgj = o.config_json();
  outs << json{{"command", "winding"}, {"config", cfgj}, {"n", n}}.dump() << "\n";
  Timer timer;
  OccGrid grid;
  OccGrid* gp = nullptr;
  if (!grid_spec.empty()) {
    double gx, gy, hw;
    int cells;
    if (std::sscanf(grid_spec.c_str(), "%lf,%lf,%lf,%d", &gx, &gy, &hw, &cells) != 4)
      fail(errc::parse_error, "--grid expects cx,cy,halfwidth,cells");
    grid = OccGrid::around(cplx(gx, gy), hw, cells);
    gp = &grid;
  }
  Engine eng;
  const auto records = eng.winding_time(n, start, o.config(), gp);
  if (!o.out.empty()) write_file(o.out, records_to_csv(records));
  std::vector<double> plus;
  std::uint64_t censored = 0;
  for (const auto& r : records)
    r.censored ? static_cast<void>(++censored) : plus.push_back(r.winding > 0.0 ? 1.0 : 0.0);
  const auto est = summarize(plus, censored);
  emit_summary(outs, "winding", cfgj, est.count ? json(est.mean) : json(),
               est.count ? json(est.stderr_) : json(), est.count, timer.elapsed());
  return est.count == 0 ? 3 : 0;
}

int run_loewner(const std::string& driver, double kappa, double T, double dt, std::uint64_t seed,
                const std::string& out, std::ostream& outs) {
  DrivingFunction d;
  if (driver == "zero")
    d = DrivingFunction::zero(T, dt);
  else if (driver.rfind("const:", 0) == 0)
    d = DrivingFunction::constant_driver(std::stod(driver.substr(6)), T, dt);
  else if (driver == "sle")
    d = DrivingFunction::sle(kappa, T, dt, seed, 0);
  else
    fail(errc::parse_error, "unknown driver '" + driver + "'");
  const json cfgj{{"driver", driver}, {"kappa", kappa}, {"T", T}, {"dt", dt}, {"seed", seed}};
  outs << json{{"command", "loewner"}, {"config", cfgj}}.dump() << "\n";
  Timer timer;
  const auto trace = chordal_trace(d, T, dt, 512);
  if (!out.empty()) {
    write_file(out, trace_to_csv(trace));
    write_file(out + ".driver.csv", driver_to_csv(d));
  }
  const cplx tip = trace.back().z;
  outs << "tip," << tip.real() << "," << tip.imag() << "\n";
  emit_summary(outs, "loewner", cfgj, json(), json(), trace.size(), timer.elapsed());
  return 0;
}

int run_series(const std::string& kind, std::uint64_t n, std::ostream& outs) {
  Timer timer;
  double value = 0.0;
  if (kind == "arctan") {
    std::vector<cplx> a(n, cplx(0.0));
    for (std::size_t m = 1; 2 * m - 1 <= n; ++m)
      a[2 * m - 2] = cplx((m % 2 == 1 ? 1.0 : -1.0) / static_cast<double>(2 * m - 1), 0.0);
    value = exit_time_from_series(a, n);
  } else if (kind == "cardioid") {
    value = exit_time_from_series({cplx(2.0), cplx(1.0)}, 2);
  } else if (kind == "identity") {
    value = exit_time_from_series({cplx(1.0)}, 1);
  } else {
    fail(errc::parse_error, "unknown series kind '" + kind + "'");
  }
  const json cfgj{{"kind", kind}, {"n", n}};
  outs << json{{"command", "series"}, {"config", cfgj}}.dump() << "\n";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  outs << buf << "\n";
  emit_summary(outs, "series", cfgj, value, 0.0, n, timer.elapsed());
  return 0;
}

int run_verify(bool quick, std::ostream& outs) {
  outs << json{{"command", "verify"}, {"config", json{{"quick", quick}}}}.dump() << "\n";
  const auto results = run_acceptance(quick, &outs);
  int passed = 0;
  for (const auto& r : results) passed += r.pass;
  outs << passed << "/" << results.size() << " criteria passed\n";
  return all_passed(results) ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"bmcx: planar Brownian motion & complex analysis laboratory"};
  app.require_subcommand(1);

  CommonOpts o_exit, o_measure, o_dirichlet, o_occ, o_wind;
  int bins = 12;
  std::string dirichlet_kind = "one";
  std::string green_kind = "halfplane", green_z = "0,1", green_w = "0,2";
  int green_n = 1, wind_n = 1;
  std::string grid_spec, probe;
  std::string driver = "zero";
  double kappa = 0.0, T = 1.0, l_dt = 1e-3;
  std::uint64_t l_seed = default_seed();
  std::string l_out;
  bool quick = false;

  auto* c_exit = app.add_subcommand("exit-time", "Monte Carlo exit time of a domain");
  add_common(c_exit, o_exit, true);

  auto* c_measure = app.add_subcommand("measure", "harmonic measure histogram");
  add_common(c_measure, o_measure, true);
  c_measure->add_option("--bins", bins, "number of boundary bins");

  auto* c_dirichlet = app.add_subcommand("dirichlet", "Dirichlet solve via exit sampling");
  add_common(c_dirichlet, o_dirichlet, true);
  c_dirichlet->add_option("--kind", dirichlet_kind, "boundary data: one|re|im|cosarg|arc:lo,hi");

  auto* c_green = app.add_subcommand("green", "closed-form Green's functions");
  c_green->add_option("--kind", green_kind, "halfplane|righthalf|disk|winding")->required();
  c_green->add_option("--z", green_z, "source point re,im");
  c_green->add_option("--w", green_w, "field point re,im");
  c_green->add_option("--n", green_n, "winding count for kind=winding");

  auto* c_occ = app.add_subcommand("occupation", "occupation-time density on a grid");
  add_common(c_occ, o_occ, true);
  c_occ->add_option("--grid", grid_spec, "grid cx,cy,halfwidth,cells")->required();
  c_occ->add_option("--w", probe, "report the density of the cell containing re,im");

  auto* c_wind = app.add_subcommand("winding", "stop at winding time tau_n");
  add_common(c_wind, o_wind, false);
  o_wind.dt_max = 1e300;  // scale-free far-field stepping
  c_wind->add_option("--n", wind_n, "winding count");
  c_wind->add_option("--grid", grid_spec, "occupation grid cx,cy,halfwidth,cells");

  auto* c_loewner = app.add_subcommand("loewner", "chordal Loewner trace");
  c_loewner->add_option("--driver", driver, "zero | const:c | sle")->required();
  c_loewner->add_option("--kappa", kappa, "SLE parameter");
  c_loewner->add_option("--T", T, "time horizon");
  c_loewner->add_option("--dt", l_dt, "discretization step");
  c_loewner->add_option("--seed", l_seed, "driver seed");
  c_loewner->add_option("--out", l_out, "trace CSV path (driver CSV written alongside)");

  auto* c_series = app.add_subcommand("series", "exit time from map coefficients");
  c_series->add_option("--kind", green_kind, "arctan | cardioid | identity")->required();
  std::uint64_t series_n = 100;
  c_series->add_option("--n", series_n, "number of coefficients");

  auto* c_verify = app.add_subcommand("verify", "run the acceptance suite");
  c_verify->add_flag("--quick", quick, "reduced path counts, 4-sigma bands");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (c_exit->parsed()) return run_exit_time(o_exit, out);
    if (c_measure->parsed()) return run_measure(o_measure, bins, out);
    if (c_dirichlet->parsed()) return run_dirichlet(o_dirichlet, dirichlet_kind, out);
    if (c_green->parsed()) return run_green(green_kind, green_z, green_w, green_n, out);
    if (c_occ->parsed()) return run_occupation(o_occ, grid_spec, probe, out);
    if (c_wind->parsed()) return run_winding(o_wind, wind_n, grid_spec, out);
    if (c_loewner->parsed()) return run_loewner(driver, kappa, T, l_dt, l_seed, l_out, out);
    if (c_series->parsed()) return run_series(green_kind, series_n, out);
    if (c_verify->parsed()) return run_verify(quick, out);
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case errc::parse_error:
      case errc::bad_config:
      case errc::start_outside_domain:
      case errc::start_at_origin:
      case errc::out_of_disk:
      case errc::invalid_exponents:
      case errc::unsupported_variant:
        return 2;
      default:
        return 3;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace bmcx::cli
