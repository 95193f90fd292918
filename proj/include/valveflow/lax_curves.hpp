#pragma once

#include <limits>

#include "valveflow/state.hpp"

namespace valveflow {

enum class Family { One = 1, Two = 2 };

inline int index(Family f) { return f == Family::One ? 1 : 2; }

enum class CurveKind { Shock, Rarefaction, Forward, Backward };

/// Xi(zeta) = -2 sinh(zeta/2): shape of the shock branches in (mu, nu).
double xi(double zeta);
double xi_inv(double x);
double xi_prime(double zeta);

/// q-coordinate of the requested curve through `base`, evaluated at density rho.
/// Forward/Backward glue the shock and rarefaction branches at rho = base.rho(),
/// rarefaction-side inclusive at the tie as in the curve definitions.
double curve_value(CurveKind kind, Family fam, double rho, const State& base,
                   const GasParams& g);

/// Same curves in (mu, nu) coordinates: returns nu at mu.
double curve_nu(CurveKind kind, Family fam, double mu, const MuNu& base);
/// d(nu)/d(mu) of curve_nu.
double curve_nu_slope(CurveKind kind, Family fam, double mu, const MuNu& base);

/// s_i(rho, base): speed of the i-shock joining base to the density-rho state.
double shock_speed(Family fam, double rho, const State& base, const GasParams& g);

/// Rankine-Hugoniot slope (q1 - q2)/(rho1 - rho2).
double rh_speed(const State& u1, const State& u2);

/// Maximum-q point of FL1 through u (the sonic point when nu <= 1, u itself otherwise).
State bar_state(const State& u, const GasParams& g);
/// Minimum-q point of BL2 through u (sonic point when nu >= -1, u itself otherwise).
State underline_state(const State& u, const GasParams& g);

struct FluxWindow {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double q) const { return q >= lo && q <= hi; }
  FluxWindow intersect(const FluxWindow& o) const;
};

/// Admissible valve fluxes seen from the upstream side (Q^-) ...
FluxWindow flux_window_minus(const State& u, const GasParams& g);
/// ... and from the downstream side (Q^+).
FluxWindow flux_window_plus(const State& u, const GasParams& g);

/// Largest-density state on FL1 through u with flux q_m. Throws DomainError
/// when q_m lies above the window of flux_window_minus(u).
State hat_state(double q_m, const State& u, const GasParams& g);
/// Largest-density state on BL2 through u with flux q_m. Throws DomainError
/// when q_m lies below the window of flux_window_plus(u).
State check_state(double q_m, const State& u, const GasParams& g);

/// The unique intersection of FL1 through u_l with BL2 through u_r.
State intermediate_state(const State& u_l, const State& u_r, const GasParams& g);

}  // namespace valveflow
