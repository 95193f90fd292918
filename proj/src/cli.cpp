#include "valveflow/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "valveflow/classification.hpp"
#include "valveflow/godunov.hpp"
#include "valveflow/io.hpp"

namespace valveflow {

namespace {

using nlohmann::json;

struct RiemannArgs {
  std::string left, right, valve, xrange = "-5:5", out;
  double a = 1.0, t = 1.0;
  int samples = 201;
};

struct ClassifyArgs {
  std::string left, right;
  double a = 1.0, M = 0.0;
};

struct SweepArgs {
  std::string slice, fixed, mu = "-2:2", nu = "-2:2", res = "101", out;
  double a = 1.0, M = 0.0;
  bool serial = false;
};

struct SimulateArgs {
  std::string config;
};

GasParams gas(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw ConfigError("sound speed a must be positive");
  return GasParams(a);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open '" + path + "' for writing");
  return f;
}

double linspace(const Range& r, int n, int i) {
  return n == 1 ? r.lo : r.lo + i * (r.hi - r.lo) / (n - 1);
}

int cmd_riemann(const RiemannArgs& args, std::ostream& out) {
  const GasParams g = gas(args.a);
  const State u_l = parse_state(args.left);
  const State u_r = parse_state(args.right);
  const Range xr = parse_range(args.xrange);
  if (!(args.t > 0.0)) throw ConfigError("--t must be positive");
  if (args.samples < 2) throw ConfigError("--samples must be at least 2");

  ValvePtr valve;
  if (!args.valve.empty()) {
    json j;
    try {
      j = json::parse(args.valve);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("--valve: ") + e.what());
    }
    valve = valve_from_json(j);
  }

  WaveFan fan = solve_rp(u_l, u_r, g);
  std::optional<ValveDecision> decision;
  if (valve) {
    decision = valve->decide(u_l, u_r, g);
    fan = solve_coupled(u_l, u_r, *decision, g);
  }
  json doc = fan_to_json(fan, g, decision ? &*decision : nullptr);
  doc["valve"] = valve ? valve_to_json(*valve) : json(nullptr);
  doc["t"] = args.t;

  if (!args.out.empty()) {
    std::ofstream csv = open_output(args.out);
    csv << "x,rho,q,v,p\n";
    for (int i = 0; i < args.samples; ++i) {
      const double x = linspace(xr, args.samples, i);
      const State u = sample(fan, x / args.t, g);
      csv << format_double(x) << ',' << format_double(u.rho()) << ',' << format_double(u.q())
          << ',' << format_double(u.v()) << ',' << format_double(pressure(u, g)) << '\n';
    }
    std::ofstream side = open_output(args.out + ".json");
    side << doc.dump(2) << '\n';
  }
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_classify(const ClassifyArgs& args, std::ostream& out) {
  const GasParams g = gas(args.a);
  if (!(args.M > 0.0)) throw ConfigError("--M must be positive");
  const RegimeReport r = classify(parse_state(args.left), parse_state(args.right), args.M, g);
  out << to_json(r).dump() << '\n';
  return kExitOk;
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  const GasParams g = gas(args.a);
  if (!(args.M > 0.0)) throw ConfigError("--M must be positive");
  if (args.slice != "left" && args.slice != "right") {
    throw ConfigError("--slice must be 'left' (fix u_l) or 'right' (fix u_r)");
  }
  const State fixed = parse_state(args.fixed);
  const Range mu = parse_range(args.mu);
  const Range nu = parse_range(args.nu);

  int n_mu = 0, n_nu = 0;
  {
    auto parse = [&](std::string_view text, int& n) {
      const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
      if (ec != std::errc() || end != text.data() + text.size() || text.empty()) {
        throw ConfigError("--res must be N or NxM, got '" + args.res + "'");
      }
    };
    const std::string_view res = args.res;
    const auto x = res.find('x');
    parse(res.substr(0, x), n_mu);
    if (x == std::string_view::npos) n_nu = n_mu;
    else parse(res.substr(x + 1), n_nu);
  }
  if (n_mu < 1 || n_nu < 1) throw ConfigError("--res must be positive, got '" + args.res + "'");

  std::vector<std::pair<State, State>> pairs;
  pairs.reserve(static_cast<std::size_t>(n_mu) * n_nu);
  for (int i = 0; i < n_mu; ++i) {
    for (int k = 0; k < n_nu; ++k) {
      const State u = State::from_mu_nu(linspace(mu, n_mu, i), linspace(nu, n_nu, k), g);
      pairs.emplace_back(args.slice == "left" ? std::pair{fixed, u} : std::pair{u, fixed});
    }
  }
  const auto reports =
      classify_pairs(pairs, args.M, g, args.serial ? Exec::Serial : Exec::Parallel);

  std::ofstream file;
  if (!args.out.empty()) file = open_output(args.out);
  std::ostream& os = args.out.empty() ? out : file;
  os << "mu,nu,regime,coherent,consistent\n";
  for (int i = 0; i < n_mu; ++i) {
    for (int k = 0; k < n_nu; ++k) {
      const RegimeReport& r = reports[static_cast<std::size_t>(i) * n_nu + k].regime;
      os << format_double(linspace(mu, n_mu, i)) << ',' << format_double(linspace(nu, n_nu, k))
         << ',' << regime_label(r) << ',' << (r.coherent ? 1 : 0) << ','
         << (r.consistent ? 1 : 0) << '\n';
    }
  }
  return kExitOk;
}

const json& require(const json& cfg, const char* key) {
  if (!cfg.contains(key)) throw ConfigError(std::string("config: missing key '") + key + "'");
  return cfg[key];
}

double require_number(const json& cfg, const char* key) {
  const json& v = require(cfg, key);
  if (!v.is_number()) throw ConfigError(std::string("config: key '") + key + "' must be a number");
  return v.get<double>();
}

double number_in(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ConfigError("config: " + where + " needs numeric key '" + key + "'");
  }
  return obj[key].get<double>();
}

struct Segment {
  double x_lo, x_hi;
  State u;
};

int cmd_simulate(const SimulateArgs& args, std::ostream& out) {
  std::ifstream in(args.config);
  if (!in) throw ConfigError("cannot read config '" + args.config + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config: expected a JSON object");

  SimConfig sim;
  const double a = require_number(cfg, "a");
  if (!(a > 0.0)) throw ConfigError("config: key 'a' must be positive");
  sim.g = GasParams(a);
  sim.cfl = require_number(cfg, "cfl");
  if (!(sim.cfl > 0.0 && sim.cfl <= 1.0)) throw ConfigError("config: key 'cfl' must lie in (0, 1]");
  sim.t_end = require_number(cfg, "t_end");
  if (!(sim.t_end >= 0.0)) throw ConfigError("config: key 't_end' must be >= 0");
  sim.output_every = cfg.contains("output_every") ? require_number(cfg, "output_every") : 0.0;

  const json& boundary = require(cfg, "boundary");
  if (boundary == "outflow") {
    sim.boundary = Boundary::Outflow;
  } else if (boundary == "reflective") {
    sim.boundary = Boundary::Reflective;
  } else {
    throw ConfigError("config: key 'boundary' must be \"outflow\" or \"reflective\"");
  }
  if (cfg.contains("valve") && !cfg["valve"].is_null()) {
    try {
      sim.valve = valve_from_json(cfg["valve"]);
    } catch (const ConfigError& e) {
      throw ConfigError(std::string("config: key 'valve': ") + e.what());
    }
  }
  if (cfg.contains("exec")) {
    const json& e = cfg["exec"];
    if (e == "serial") sim.exec = Exec::Serial;
    else if (e == "parallel") sim.exec = Exec::Parallel;
    else throw ConfigError("config: key 'exec' must be \"serial\" or \"parallel\"");
  }

  const json& n_json = require(cfg, "n_cells");
  if (!n_json.is_number_integer() || n_json.get<long>() < 1) {
    throw ConfigError("config: key 'n_cells' must be a positive integer");
  }
  const int n_cells = n_json.get<int>();

  const json& cells = require(cfg, "cells");
  if (!cells.is_array() || cells.empty()) {
    throw ConfigError("config: key 'cells' must be a non-empty array");
  }
  std::vector<Segment> segments;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const std::string where = "cells[" + std::to_string(i) + "]";
    const json& c = cells[i];
    if (!c.is_object()) throw ConfigError("config: " + where + " must be an object");
    const double rho = number_in(c, "rho", where);
    const double q = number_in(c, "q", where);
    if (!(rho >= kMinDensity)) throw ConfigError("config: " + where + " needs rho > 0");
    Segment s{number_in(c, "x_lo", where), number_in(c, "x_hi", where), State(rho, q)};
    if (!(s.x_lo < s.x_hi)) throw ConfigError("config: " + where + " needs x_lo < x_hi");
    segments.push_back(s);
  }

  const json& out_json = require(cfg, "out");
  if (!out_json.is_string() || out_json.get<std::string>().empty()) {
    throw ConfigError("config: key 'out' must be a non-empty path prefix");
  }
  const std::string prefix = out_json.get<std::string>();

  double x_min = segments.front().x_lo, x_max = segments.front().x_hi;
  for (const Segment& s : segments) {
    x_min = std::min(x_min, s.x_lo);
    x_max = std::max(x_max, s.x_hi);
  }
  const Grid1D grid = Grid1D::make(x_min, x_max, n_cells, [&](double x) {
    for (const Segment& s : segments) {
      if (x >= s.x_lo && x < s.x_hi) return s.u;
    }
    throw ConfigError("config: key 'cells' leaves x = " + format_double(x) + " uncovered");
  });
  if (sim.valve && grid.valve_interface <= 0) {
    throw ConfigError("config: with a valve, x = 0 must be an interior cell interface");
  }

  std::ofstream snaps = open_output(prefix + ".csv");
  write_snapshot_header(snaps);
  RunHooks hooks;
  hooks.snapshot = [&](const Grid1D& gr) { write_snapshot(snaps, gr, sim.g); };
  const RunReport rep = run(grid, sim, hooks);

  std::ofstream log = open_output(prefix + "_valve.csv");
  write_valve_log(log, rep.events);

  long flips = 0;
  for (std::size_t i = 1; i < rep.events.size(); ++i) {
    if (rep.events[i].decision.mode != rep.events[i - 1].decision.mode) ++flips;
  }
  const json report{{"steps", rep.steps},
                    {"t_end", rep.final_grid.time},
                    {"mass_initial", rep.mass_initial},
                    {"mass_final", rep.mass_final},
                    {"boundary_mass", rep.boundary_mass},
                    {"mass_drift", rep.mass_drift()},
                    {"momentum_initial", rep.momentum_initial},
                    {"momentum_final", rep.momentum_final},
                    {"boundary_momentum", rep.boundary_momentum},
                    {"valve_momentum", rep.valve_momentum},
                    {"momentum_residual", rep.momentum_residual()},
                    {"valve_flips", flips},
                    {"snapshots", prefix + ".csv"},
                    {"valve_log", prefix + "_valve.csv"}};
  out << report.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact isothermal Riemann solver with a pressure valve at x = 0"};
  app.require_subcommand(1);

  RiemannArgs ra;
  auto* riemann = app.add_subcommand("riemann", "Solve one Riemann problem, optionally with a valve");
  riemann->add_option("--left", ra.left, "Left state RHO,Q")->required();
  riemann->add_option("--right", ra.right, "Right state RHO,Q")->required();
  riemann->add_option("--a", ra.a, "Sound speed")->capture_default_str();
  riemann->add_option("--valve", ra.valve, "Valve record as JSON");
  riemann->add_option("--t", ra.t, "Sampling time")->capture_default_str();
  riemann->add_option("--xrange", ra.xrange, "Sampling interval LO:HI")->capture_default_str();
  riemann->add_option("--samples", ra.samples, "Number of samples")->capture_default_str();
  riemann->add_option("--out", ra.out, "CSV path; the fan JSON goes to PATH.json");

  ClassifyArgs ca;
  auto* cls = app.add_subcommand("classify", "Regime report for the electronic valve");
  cls->add_option("--left", ca.left, "Left state RHO,Q")->required();
  cls->add_option("--right", ca.right, "Right state RHO,Q")->required();
  cls->add_option("--a", ca.a, "Sound speed")->capture_default_str();
  cls->add_option("--M", ca.M, "Valve threshold")->required();

  SweepArgs sa;
  auto* sweep = app.add_subcommand("sweep", "Regime map over a (mu, nu) grid");
  sweep->add_option("--slice", sa.slice, "left: fix u_l and grid u_r; right: the reverse")
      ->required();
  sweep->add_option("--fixed", sa.fixed, "The fixed state RHO,Q")->required();
  sweep->add_option("--mu", sa.mu, "mu range LO:HI")->capture_default_str();
  sweep->add_option("--nu", sa.nu, "nu range LO:HI")->capture_default_str();
  sweep->add_option("--res", sa.res, "Points per axis, N or NxM")->capture_default_str();
  sweep->add_option("--M", sa.M, "Valve threshold")->required();
  sweep->add_option("--a", sa.a, "Sound speed")->capture_default_str();
  sweep->add_option("--out", sa.out, "CSV path (default stdout)");
  sweep->add_flag("--serial", sa.serial, "Evaluate on one thread");

  SimulateArgs ma;
  auto* sim = app.add_subcommand("simulate", "Godunov simulation from a JSON config");
  sim->add_option("--config", ma.config, "Config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (riemann->parsed()) return cmd_riemann(ra, out);
    if (cls->parsed()) return cmd_classify(ca, out);
    if (sweep->parsed()) return cmd_sweep(sa, out);
    return cmd_simulate(ma, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  }
}

}  // namespace valveflow
