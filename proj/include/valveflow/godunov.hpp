#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "valveflow/exec.hpp"
#include "valveflow/state.hpp"
#include "valveflow/valve.hpp"

namespace valveflow {

enum class Boundary { Outflow, Reflective };

/// Uniform cell-centred mesh. With a valve, x = 0 must be a cell interface.
struct Grid1D {
  double x_min = -1.0;
  double x_max = 1.0;
  int n_cells = 0;
  int valve_interface = -1;  // interface k sits between cells k-1 and k; -1 if 0 is not one
  std::vector<State> cells;
  double time = 0.0;

  /// Mesh filled with `fill(x_center)`.
  static Grid1D make(double x_min, double x_max, int n_cells,
                     const std::function<State(double)>& fill);

  double dx() const { return (x_max - x_min) / n_cells; }
  double center(int j) const { return x_min + (j + 0.5) * dx(); }
  double mass() const;
  double momentum() const;
};

struct SimConfig {
  double cfl = 0.9;
  double t_end = 1.0;
  Boundary boundary = Boundary::Outflow;
  ValvePtr valve;  // null: plain pipe, every interface uses the classical solver
  GasParams g{1.0};
  double output_every = 0.0;  // <= 0: snapshots at start and end only
  Exec exec = Exec::Parallel;

  void validate() const;
};

struct StepResult {
  Grid1D grid;
  double dt = 0.0;
  std::optional<ValveDecision> decision;
  Flux valve_minus{};  // flux used by the cell left of the valve
  Flux valve_plus{};   // flux used by the cell right of the valve
  Flux left_boundary{};
  Flux right_boundary{};
};

/// One Godunov step of length min(cfl dx / max(|v| + a), dt_max).
StepResult step(const Grid1D& grid, const SimConfig& cfg, double dt_max);

struct ValveEvent {
  double t;
  ValveDecision decision;
};

struct RunReport {
  Grid1D final_grid;
  long steps = 0;
  double mass_initial = 0.0;
  double mass_final = 0.0;
  double boundary_mass = 0.0;  // sum dt (F_left - F_right).mass
  double momentum_initial = 0.0;
  double momentum_final = 0.0;
  double boundary_momentum = 0.0;
  double valve_momentum = 0.0;  // sum dt (f2(u+) - f2(u-)) at the valve
  std::vector<ValveEvent> events;

  double mass_drift() const;
  /// |(Q_final - Q_initial) - boundary - valve| / max(1, |Q_initial|).
  double momentum_residual() const;
};

struct RunHooks {
  std::function<void(const Grid1D&)> snapshot;
  std::function<void(const StepResult&)> step;
};

/// Advances to cfg.t_end, landing exactly on every snapshot time.
RunReport run(const Grid1D& initial, const SimConfig& cfg, const RunHooks& hooks = {});

const char* to_string(Boundary b);

}  // namespace valveflow
