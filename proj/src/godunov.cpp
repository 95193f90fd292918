#include "valveflow/godunov.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "valveflow/riemann.hpp"

namespace valveflow {

namespace {

struct InterfaceFlux {
  Flux f;
  double speed;  // largest |wave speed| of the fan
};

double fan_speed(const WaveFan& fan) {
  if (fan.waves.empty()) return 0.0;
  return std::max(std::abs(fan.min_speed()), std::abs(fan.max_speed()));
}

InterfaceFlux interface_flux(const State& l, const State& r, const GasParams& g) {
  if (l == r) return {flux(l, g), 0.0};
  const WaveFan fan = solve_rp(l, r, g);
  return {flux(sample(fan, 0.0, g), g), fan_speed(fan)};
}

Flux wall_flux(double rho, const GasParams& g) { return Flux{0.0, g.a2() * rho}; }

struct ValveFluxes {
  ValveDecision decision;
  Flux minus;
  Flux plus;
  double speed;
};

ValveFluxes valve_fluxes(const State& l, const State& r, const ValveModel& valve,
                         const GasParams& g) {
  const ValveDecision d = valve.decide(l, r, g);
  if (d.mode == ValveMode::Open) {
    const InterfaceFlux f = interface_flux(l, r, g);
    return {d, f.f, f.f, f.speed};
  }
  const State minus = hat_state(d.q_m, l, g);
  const State plus = check_state(d.q_m, r, g);
  return {d, Flux{d.q_m, flux(minus, g).momentum}, Flux{d.q_m, flux(plus, g).momentum},
          fan_speed(solve_coupled(l, r, d, g))};
}

}  // namespace

Grid1D Grid1D::make(double x_min, double x_max, int n_cells,
                    const std::function<State(double)>& fill) {
  if (!(x_max > x_min) || n_cells <= 0) throw DomainError("mesh needs x_max > x_min and n_cells > 0");
  Grid1D grid;
  grid.x_min = x_min;
  grid.x_max = x_max;
  grid.n_cells = n_cells;
  if (x_min < 0.0 && x_max > 0.0) {
    const double k = -x_min / grid.dx();
    const double kr = std::round(k);
    if (std::abs(k - kr) <= 1e-9) grid.valve_interface = static_cast<int>(kr);
  }
  grid.cells.reserve(n_cells);
  for (int j = 0; j < n_cells; ++j) grid.cells.push_back(fill(grid.center(j)));
  return grid;
}

double Grid1D::mass() const {
  double s = 0.0;
  for (const State& u : cells) s += u.rho();
  return s * dx();
}

double Grid1D::momentum() const {
  double s = 0.0;
  for (const State& u : cells) s += u.q();
  return s * dx();
}

void SimConfig::validate() const {
  if (!(cfl > 0.0 && cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw DomainError("t_end must be >= 0");
  if (!std::isfinite(output_every)) throw DomainError("output_every must be finite");
}

StepResult step(const Grid1D& grid, const SimConfig& cfg, double dt_max) {
  const GasParams& g = cfg.g;
  const int n = grid.n_cells;
  const double dx = grid.dx();
  const std::vector<State>& u = grid.cells;
  const bool parallel = cfg.exec == Exec::Parallel;
  const int k = cfg.valve ? grid.valve_interface : -1;
  if (cfg.valve && k <= 0) throw DomainError("valve requires x = 0 to be an interior cell interface");

  // flux[i] is the flux through interface i as seen by cell i (its left face);
  // cell i-1 sees flux[i] too except at the valve, where it sees valve_minus.
  std::vector<Flux> fl(n + 1);
  double smax = 0.0;
  bool failed = false;
  std::string what;
#pragma omp parallel for schedule(static) reduction(max : smax) if (parallel)
  for (int i = 1; i < n; ++i) {
    if (i == k) continue;
    try {
      const InterfaceFlux f = interface_flux(u[i - 1], u[i], g);
      fl[i] = f.f;
      smax = std::max(smax, f.speed);
    } catch (const std::exception& e) {
#pragma omp critical(valveflow_flux_error)
      {
        failed = true;
        what = e.what();
      }
    }
  }
  if (failed) throw DomainError("interface flux failed: " + what);

#pragma omp parallel for reduction(max : smax) if (parallel)
  for (int j = 0; j < n; ++j) smax = std::max(smax, std::abs(u[j].v()) + g.a());

  StepResult out;
  if (cfg.boundary == Boundary::Reflective) {
    fl[0] = wall_flux(check_state(0.0, u[0], g).rho(), g);
    fl[n] = wall_flux(hat_state(0.0, u[n - 1], g).rho(), g);
    smax = std::max({smax, fan_speed(solve_rp(u[0].mirrored(), u[0], g)),
                     fan_speed(solve_rp(u[n - 1], u[n - 1].mirrored(), g))});
  } else {
    fl[0] = flux(u[0], g);
    fl[n] = flux(u[n - 1], g);
  }
  out.left_boundary = fl[0];
  out.right_boundary = fl[n];

  Flux minus{}, plus{};
  if (k > 0) {
    const ValveFluxes vf = valve_fluxes(u[k - 1], u[k], *cfg.valve, g);
    out.decision = vf.decision;
    minus = vf.minus;
    plus = vf.plus;
    fl[k] = plus;
    smax = std::max(smax, vf.speed);
  }
  out.dt = std::min(cfg.cfl * dx / smax, dt_max);
  out.valve_minus = minus;
  out.valve_plus = plus;

  const double lambda = out.dt / dx;
  out.grid = grid;
  std::vector<State>& next = out.grid.cells;
  int bad = -1;
#pragma omp parallel for schedule(static) if (parallel)
  for (int j = 0; j < n; ++j) {
    const Flux& right = (j + 1 == k) ? minus : fl[j + 1];
    const double rho = u[j].rho() - lambda * (right.mass - fl[j].mass);
    const double q = u[j].q() - lambda * (right.momentum - fl[j].momentum);
    if (!(rho >= kMinDensity) || !std::isfinite(q)) {
#pragma omp critical(valveflow_cell_error)
      if (bad < 0 || j < bad) bad = j;
      continue;
    }
    next[j] = State(rho, q);
  }
  if (bad >= 0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "density left the state space in cell %d (x = %.17g) at t = %.17g",
                  bad, grid.center(bad), grid.time + out.dt);
    throw DomainError(buf);
  }
  out.grid.time = grid.time + out.dt;
  return out;
}

double RunReport::mass_drift() const {
  return std::abs(mass_final - mass_initial - boundary_mass) / std::abs(mass_initial);
}

double RunReport::momentum_residual() const {
  return std::abs((momentum_final - momentum_initial) - boundary_momentum - valve_momentum) /
         std::max(1.0, std::abs(momentum_initial));
}

RunReport run(const Grid1D& initial, const SimConfig& cfg, const RunHooks& hooks) {
  cfg.validate();
  RunReport rep;
  rep.mass_initial = initial.mass();
  rep.momentum_initial = initial.momentum();

  Grid1D grid = initial;
  if (hooks.snapshot) hooks.snapshot(grid);
  const double t_end = cfg.t_end;
  long snap = 1;
  auto next_snapshot = [&] {
    if (cfg.output_every <= 0.0) return t_end;
    return std::min(t_end, initial.time + snap * cfg.output_every);
  };

  while (grid.time < t_end) {
    const double target = next_snapshot();
    StepResult s = step(grid, cfg, target - grid.time);
    const bool landed = s.dt >= target - grid.time;
    if (landed) s.grid.time = target;

    rep.boundary_mass += s.dt * (s.left_boundary.mass - s.right_boundary.mass);
    rep.boundary_momentum += s.dt * (s.left_boundary.momentum - s.right_boundary.momentum);
    if (s.decision) {
      rep.valve_momentum += s.dt * (s.valve_plus.momentum - s.valve_minus.momentum);
      rep.events.push_back({grid.time, *s.decision});
    }
    ++rep.steps;
    if (hooks.step) hooks.step(s);
    grid = std::move(s.grid);
    if (landed && target < t_end) {
      ++snap;
      if (hooks.snapshot) hooks.snapshot(grid);
    }
  }
  if (hooks.snapshot && rep.steps > 0) hooks.snapshot(grid);

  rep.mass_final = grid.mass();
  rep.momentum_final = grid.momentum();
  rep.final_grid = std::move(grid);
  return rep;
}

const char* to_string(Boundary b) { return b == Boundary::Outflow ? "outflow" : "reflective"; }

}  // namespace valveflow
