#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "valveflow/lax_curves.hpp"
#include "valveflow/state.hpp"

namespace valveflow {

enum class WaveKind { Shock, Rarefaction, UnderCompressive };

/// Family tag of a wave; Stationary marks the valve discontinuity at xi = 0.
enum class WaveFamily { One = 1, Two = 2, Stationary = 0 };

struct Wave {
  WaveFamily family;
  WaveKind kind;
  State left;
  State right;
  double speed_lo;
  double speed_hi;
};

/// Self-similar solution xi -> u(xi) as an ordered list of waves.
struct WaveFan {
  State left_datum;
  State right_datum;
  std::vector<Wave> waves;

  /// Every wave speed in order (both ends for rarefactions).
  std::vector<double> breakpoints() const;
  double min_speed() const;
  double max_speed() const;
};

/// Relative threshold below which a wave is treated as having zero strength.
inline constexpr double kZeroStrength = 1e-13;

bool is_zero_strength(const State& l, const State& r, const GasParams& g);

/// Lax Riemann solver for the isothermal p-system.
WaveFan solve_rp(const State& u_l, const State& u_r, const GasParams& g);

/// Single wave of the given family joining l (left) to r (right); the pair
/// must lie on the forward curve of that family through l. Empty when the
/// wave has zero strength.
std::optional<Wave> make_wave(Family fam, const State& l, const State& r, const GasParams& g);

/// u(xi), right-continuous at discontinuities.
State sample(const WaveFan& fan, double xi, const GasParams& g);
/// u(xi^-), the left limit.
State sample_left(const WaveFan& fan, double xi, const GasParams& g);

/// (u(0^-), u(0^+)).
std::pair<State, State> traces(const WaveFan& fan, const GasParams& g);

const char* to_string(WaveKind k);
const char* to_string(WaveFamily f);

}  // namespace valveflow
