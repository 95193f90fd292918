#include "valveflow/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace valveflow {

namespace {

State rarefaction_interior(const Wave& w, double xi, const GasParams& g) {
  const double a = g.a();
  if (w.family == WaveFamily::One) {
    const double v = xi + a;
    const double rho = w.left.rho() * std::exp((w.left.v() - a - xi) / a);
    return State(rho, rho * v);
  }
  const double v = xi - a;
  const double rho = w.right.rho() * std::exp((xi - a - w.right.v()) / a);
  return State(rho, rho * v);
}

// Walks the fan; `right_continuous` selects u(xi) vs u(xi^-) at jumps.
State walk(const WaveFan& fan, double xi, const GasParams& g, bool right_continuous) {
  State current = fan.left_datum;
  for (const Wave& w : fan.waves) {
    if (w.kind == WaveKind::Rarefaction) {
      if (xi < w.speed_lo || (!right_continuous && xi == w.speed_lo)) return current;
      if (xi == w.speed_lo) return w.left;
      if (xi < w.speed_hi) return rarefaction_interior(w, xi, g);
      if (xi == w.speed_hi) return w.right;
      current = w.right;
    } else {
      const bool passed = right_continuous ? xi >= w.speed_lo : xi > w.speed_lo;
      if (!passed) return current;
      current = w.right;
    }
  }
  return current;
}

}  // namespace

std::vector<double> WaveFan::breakpoints() const {
  std::vector<double> out;
  for (const Wave& w : waves) {
    out.push_back(w.speed_lo);
    if (w.speed_hi != w.speed_lo) out.push_back(w.speed_hi);
  }
  return out;
}

double WaveFan::min_speed() const { return waves.empty() ? 0.0 : waves.front().speed_lo; }

double WaveFan::max_speed() const { return waves.empty() ? 0.0 : waves.back().speed_hi; }

bool is_zero_strength(const State& l, const State& r, const GasParams& g) {
  const double rho_scale = std::max(l.rho(), r.rho());
  const double q_scale = std::max({std::abs(l.q()), std::abs(r.q()), g.a() * rho_scale});
  return std::abs(l.rho() - r.rho()) <= kZeroStrength * rho_scale &&
         std::abs(l.q() - r.q()) <= kZeroStrength * q_scale;
}

std::optional<Wave> make_wave(Family fam, const State& l, const State& r, const GasParams& g) {
  if (is_zero_strength(l, r, g)) return std::nullopt;
  const WaveFamily wf = fam == Family::One ? WaveFamily::One : WaveFamily::Two;
  // 1-shocks compress (rho_r > rho_l), 2-shocks expand (rho_r < rho_l).
  const bool shock = fam == Family::One ? r.rho() > l.rho() : r.rho() < l.rho();
  if (shock) {
    // Speed from the shock-curve formula through the datum-side base, which
    // avoids the cancellation in the RH slope for weak shocks.
    const double s = fam == Family::One ? shock_speed(Family::One, r.rho(), l, g)
                                        : shock_speed(Family::Two, l.rho(), r, g);
    return Wave{wf, WaveKind::Shock, l, r, s, s};
  }
  const int i = index(fam);
  return Wave{wf, WaveKind::Rarefaction, l, r, eigenvalue(i, l, g), eigenvalue(i, r, g)};
}

WaveFan solve_rp(const State& u_l, const State& u_r, const GasParams& g) {
  WaveFan fan{u_l, u_r, {}};
  if (u_l == u_r) return fan;
  const State mid = intermediate_state(u_l, u_r, g);
  if (auto w = make_wave(Family::One, u_l, mid, g)) fan.waves.push_back(*w);
  if (auto w = make_wave(Family::Two, mid, u_r, g)) fan.waves.push_back(*w);
  // Chain the data exactly when a zero-strength wave was dropped.
  if (fan.waves.size() == 1) {
    fan.waves.front().left = u_l;
    fan.waves.front().right = u_r;
  }
  return fan;
}

State sample(const WaveFan& fan, double xi, const GasParams& g) {
  return walk(fan, xi, g, true);
}

State sample_left(const WaveFan& fan, double xi, const GasParams& g) {
  return walk(fan, xi, g, false);
}

std::pair<State, State> traces(const WaveFan& fan, const GasParams& g) {
  return {sample_left(fan, 0.0, g), sample(fan, 0.0, g)};
}

const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::UnderCompressive: return "under_compressive";
  }
  return "?";
}

const char* to_string(WaveFamily f) {
  switch (f) {
    case WaveFamily::One: return "1";
    case WaveFamily::Two: return "2";
    case WaveFamily::Stationary: return "stationary";
  }
  return "?";
}

}  // namespace valveflow
