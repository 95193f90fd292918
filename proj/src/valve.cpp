#include "valveflow/valve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "valveflow/roots.hpp"

namespace valveflow {

namespace {

double require_positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
  return x;
}

}  // namespace

double closed_valve_gap(const State& u_l, const State& u_r, const GasParams& g) {
  return g.pressure(check_state(0.0, u_r, g).rho()) - g.pressure(hat_state(0.0, u_l, g).rho());
}

ElectronicValve::ElectronicValve(double threshold)
    : m_(require_positive(threshold, "electronic valve threshold M")) {}

ValveDecision ElectronicValve::decide(const State& u_l, const State& u_r,
                                      const GasParams& g) const {
  const double gap = closed_valve_gap(u_l, u_r, g);
  return std::abs(gap) <= m_ ? ValveDecision::active(0.0, gap) : ValveDecision::open(gap);
}

SpringValve::SpringValve(double threshold)
    : m_(require_positive(threshold, "spring valve threshold M")) {}

ValveDecision SpringValve::decide(const State& u_l, const State& u_r, const GasParams& g) const {
  const double gap = g.pressure(u_r.rho()) - g.pressure(u_l.rho());
  return std::abs(gap) <= m_ ? ValveDecision::active(0.0, gap) : ValveDecision::open(gap);
}

OneWayValve::OneWayValve(ValvePtr inner) : inner_(std::move(inner)) {
  if (!inner_) throw DomainError("one-way valve needs an inner valve model");
}

ValveDecision OneWayValve::decide(const State& u_l, const State& u_r, const GasParams& g) const {
  ValveDecision d = inner_->decide(u_l, u_r, g);
  if (d.mode == ValveMode::Active) {
    if (d.q_m < 0.0) d.q_m = 0.0;
    return d;
  }
  const auto [minus, plus] = traces(solve_rp(u_l, u_r, g), g);
  if (plus.q() < 0.0) return ValveDecision::active(0.0, d.gap);
  return d;
}

PressureDropValve::PressureDropValve(double loss_coefficient)
    : k_(require_positive(loss_coefficient, "pressure-drop coefficient k")) {}

double PressureDropValve::residual(double q, const State& u_l, const State& u_r,
                                   const GasParams& g) const {
  const double p_hat = g.pressure(hat_state(q, u_l, g).rho());
  const double p_check = g.pressure(check_state(q, u_r, g).rho());
  return p_check - p_hat + g.a2() * k_ * q * q / p_hat;
}

ValveDecision PressureDropValve::decide(const State& u_l, const State& u_r,
                                        const GasParams& g) const {
  const double at_zero = residual(0.0, u_l, u_r, g);
  // Downstream closed-valve pressure already at or above upstream: valve shuts.
  if (at_zero >= 0.0) return ValveDecision::active(0.0, at_zero);

  const FluxWindow window = flux_window_minus(u_l, g).intersect(flux_window_plus(u_r, g));
  const double hi = window.hi;
  const double at_hi = residual(hi, u_l, u_r, g);
  if (at_hi < 0.0) {
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "pressure-drop law has no root in [0, %.17g]: residual %.6g at the window edge",
                  hi, at_hi);
    throw NoValveSolution(buf);
  }
  // The residual is increasing in q on the window (p_check rises, p_hat falls).
  auto f = [&](double q) { return residual(q, u_l, u_r, g); };
  const RootResult r = bisect(f, 0.0, hi, 1e-12 * std::max(1.0, hi));
  return ValveDecision::active(r.x, at_zero);
}

WaveFan solve_coupled(const State& u_l, const State& u_r, const ValveDecision& d,
                      const GasParams& g) {
  if (d.mode == ValveMode::Open) return solve_rp(u_l, u_r, g);

  const State minus = hat_state(d.q_m, u_l, g);
  State plus = check_state(d.q_m, u_r, g);
  const bool jump = !is_zero_strength(minus, plus, g);
  if (!jump) plus = minus;

  WaveFan fan{u_l, u_r, {}};
  // Left and right sub-fans carry nonpositive and nonnegative speeds; the
  // clamps only remove rounding noise at sonic or stationary endpoints.
  if (auto w = make_wave(Family::One, u_l, minus, g)) {
    w->speed_hi = std::min(w->speed_hi, 0.0);
    w->speed_lo = std::min(w->speed_lo, w->speed_hi);
    fan.waves.push_back(*w);
  }
  if (jump) fan.waves.push_back(Wave{WaveFamily::Stationary, WaveKind::UnderCompressive, minus,
                                     plus, 0.0, 0.0});
  if (auto w = make_wave(Family::Two, plus, u_r, g)) {
    w->speed_lo = std::max(w->speed_lo, 0.0);
    w->speed_hi = std::max(w->speed_hi, w->speed_lo);
    fan.waves.push_back(*w);
  }
  return fan;
}

WaveFan solve_coupled(const State& u_l, const State& u_r, const ValveModel& model,
                      const GasParams& g) {
  return solve_coupled(u_l, u_r, model.decide(u_l, u_r, g), g);
}

const char* to_string(ValveMode m) { return m == ValveMode::Open ? "Open" : "Active"; }

}  // namespace valveflow
