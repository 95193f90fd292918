#include "valveflow/lax_curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "valveflow/roots.hpp"

namespace valveflow {

namespace {

constexpr double kMuTol = 1e-13;
constexpr int kMaxIter = 200;

// Branch selection shared by the rho- and mu-parametrisations. Returns true for
// the shock branch; `above` says whether the evaluation point lies strictly
// above (true) / at-or-below (false) the base, and `at_base` marks the tie.
bool forward_backward_uses_shock(CurveKind kind, Family fam, bool above, bool at_base) {
  // FL1: R for <=, S for >.   FL2: S for <, R for >=.
  // BL1: S for <, R for >=.   BL2: R for <=, S for >.
  const bool r_on_low_closed = (kind == CurveKind::Forward) == (fam == Family::One);
  if (at_base) return false;
  return r_on_low_closed ? above : !above;
}

double shock_q(Family fam, double rho, const State& b, const GasParams& g) {
  const double r = std::sqrt(rho / b.rho());
  const double sign = fam == Family::One ? -1.0 : 1.0;
  return rho * (b.v() + sign * g.a() * (r - 1.0 / r));
}

double rarefaction_q(Family fam, double rho, const State& b, const GasParams& g) {
  const double sign = fam == Family::One ? -1.0 : 1.0;
  return rho * (b.v() + sign * g.a() * std::log(rho / b.rho()));
}

// Maximiser of FL1 through a base in mu: the sonic point of R1 for nu <= 1,
// otherwise the stationary point of the (concave) S1 branch above the base.
double fl1_peak_mu(const MuNu& b) {
  if (b.nu <= 1.0) return b.mu + b.nu - 1.0;
  const double s = (b.nu + std::sqrt(b.nu * b.nu + 3.0)) / 3.0;
  return b.mu + 2.0 * std::log(s);
}

State hat_closed_form(const State& u, const GasParams& g) {
  const double v = u.v();
  const double a = g.a();
  if (v > 0.0) {
    const double t = std::sqrt(v * v + 4.0 * a * a) + v;
    return State(u.rho() / (4.0 * a * a) * t * t, 0.0);
  }
  return State(u.rho() * std::exp(v / a), 0.0);
}

char* fmt(char* buf, std::size_t n, const char* what, double qm, double bound) {
  std::snprintf(buf, n, "q_m = %.17g violates %s = %.17g", qm, what, bound);
  return buf;
}

}  // namespace

double xi(double zeta) { return -2.0 * std::sinh(0.5 * zeta); }

double xi_inv(double x) { return -2.0 * std::asinh(0.5 * x); }

double xi_prime(double zeta) { return -std::cosh(0.5 * zeta); }

double curve_value(CurveKind kind, Family fam, double rho, const State& base,
                   const GasParams& g) {
  if (!(rho > 0.0)) throw DomainError("curve_value: density must be positive");
  switch (kind) {
    case CurveKind::Shock: return shock_q(fam, rho, base, g);
    case CurveKind::Rarefaction: return rarefaction_q(fam, rho, base, g);
    case CurveKind::Forward:
    case CurveKind::Backward: {
      const bool shock =
          forward_backward_uses_shock(kind, fam, rho > base.rho(), rho == base.rho());
      return shock ? shock_q(fam, rho, base, g) : rarefaction_q(fam, rho, base, g);
    }
  }
  return 0.0;
}

double curve_nu(CurveKind kind, Family fam, double mu, const MuNu& b) {
  auto shock = [&] {
    return fam == Family::One ? b.nu + xi(mu - b.mu) : b.nu + xi(b.mu - mu);
  };
  auto rare = [&] { return fam == Family::One ? b.nu + b.mu - mu : b.nu - b.mu + mu; };
  switch (kind) {
    case CurveKind::Shock: return shock();
    case CurveKind::Rarefaction: return rare();
    default: break;
  }
  return forward_backward_uses_shock(kind, fam, mu > b.mu, mu == b.mu) ? shock() : rare();
}

double curve_nu_slope(CurveKind kind, Family fam, double mu, const MuNu& b) {
  auto shock = [&] {
    return fam == Family::One ? xi_prime(mu - b.mu) : -xi_prime(b.mu - mu);
  };
  auto rare = [&] { return fam == Family::One ? -1.0 : 1.0; };
  switch (kind) {
    case CurveKind::Shock: return shock();
    case CurveKind::Rarefaction: return rare();
    default: break;
  }
  return forward_backward_uses_shock(kind, fam, mu > b.mu, mu == b.mu) ? shock() : rare();
}

double shock_speed(Family fam, double rho, const State& base, const GasParams& g) {
  if (!(rho > 0.0)) throw DomainError("shock_speed: density must be positive");
  const double r = std::sqrt(rho / base.rho());
  return fam == Family::One ? base.v() - g.a() * r : base.v() + g.a() * r;
}

double rh_speed(const State& u1, const State& u2) {
  return (u1.q() - u2.q()) / (u1.rho() - u2.rho());
}

State bar_state(const State& u, const GasParams& g) {
  const MuNu b = to_mu_nu(u, g);
  if (b.nu >= 1.0) return u;
  return State::from_mu_nu(b.mu + b.nu - 1.0, 1.0, g);
}

State underline_state(const State& u, const GasParams& g) {
  return bar_state(u.mirrored(), g).mirrored();
}

FluxWindow FluxWindow::intersect(const FluxWindow& o) const {
  return {std::max(lo, o.lo), std::min(hi, o.hi)};
}

FluxWindow flux_window_minus(const State& u, const GasParams& g) {
  FluxWindow w;
  w.hi = u.v() <= g.a() ? bar_state(u, g).q() : u.q();
  return w;
}

FluxWindow flux_window_plus(const State& u, const GasParams& g) {
  FluxWindow w;
  w.lo = u.v() >= -g.a() ? underline_state(u, g).q() : u.q();
  return w;
}

State hat_state(double q_m, const State& u, const GasParams& g) {
  if (!std::isfinite(q_m)) throw DomainError("hat_state: q_m must be finite");
  const FluxWindow w = flux_window_minus(u, g);
  if (q_m > w.hi) {
    char buf[160];
    throw DomainError(fmt(buf, sizeof buf,
                          u.v() <= g.a() ? "upper bound q_bar(u)" : "upper bound q(u) (supersonic)",
                          q_m, w.hi));
  }
  if (q_m == 0.0) return hat_closed_form(u, g);

  const MuNu b = to_mu_nu(u, g);
  const double a = g.a();
  auto excess = [&](double mu) {
    return a * curve_nu(CurveKind::Forward, Family::One, mu, b) * std::exp(mu) - q_m;
  };
  auto slope = [&](double mu) {
    return a * std::exp(mu) *
           (curve_nu(CurveKind::Forward, Family::One, mu, b) +
            curve_nu_slope(CurveKind::Forward, Family::One, mu, b));
  };
  const double lo = fl1_peak_mu(b);
  if (excess(lo) <= 0.0) {
    // q_m sits at the curve maximum up to rounding.
    return State(std::exp(lo), q_m);
  }
  double step = 1.0;
  double hi = lo + step;
  while (excess(hi) > 0.0) {
    step *= 2.0;
    hi = lo + step;
  }
  const RootResult r = solve_bracketed(excess, slope, lo, hi, kMuTol, kMaxIter);
  return State(std::exp(r.x), q_m);
}

State check_state(double q_m, const State& u, const GasParams& g) {
  if (!std::isfinite(q_m)) throw DomainError("check_state: q_m must be finite");
  const FluxWindow w = flux_window_plus(u, g);
  if (q_m < w.lo) {
    char buf[160];
    throw DomainError(fmt(buf, sizeof buf,
                          u.v() >= -g.a() ? "lower bound q_underline(u)"
                                          : "lower bound q(u) (supersonic)",
                          q_m, w.lo));
  }
  // BL2 through u is the q-mirror of FL1 through the mirrored state.
  return State(hat_state(-q_m, u.mirrored(), g).rho(), q_m);
}

State intermediate_state(const State& u_l, const State& u_r, const GasParams& g) {
  if (u_l == u_r) return u_l;
  const MuNu l = to_mu_nu(u_l, g);
  const MuNu r = to_mu_nu(u_r, g);

  auto gap = [&](double mu) {
    return curve_nu(CurveKind::Forward, Family::One, mu, l) -
           curve_nu(CurveKind::Backward, Family::Two, mu, r);
  };
  auto gap_slope = [&](double mu) {
    return curve_nu_slope(CurveKind::Forward, Family::One, mu, l) -
           curve_nu_slope(CurveKind::Backward, Family::Two, mu, r);
  };

  // Single-wave data: return the datum exactly so that re-solving a fan's
  // own states does not introduce root-finder noise.
  constexpr double kOnCurve = 4e-15;
  const double at_r = gap(r.mu);
  if (std::abs(at_r) <= kOnCurve * std::max(1.0, std::abs(r.nu))) return u_r;
  const double at_l = gap(l.mu);
  if (std::abs(at_l) <= kOnCurve * std::max(1.0, std::abs(l.nu))) return u_l;

  double lo = std::min(l.mu, r.mu);
  double hi = std::max(l.mu, r.mu);
  double step = std::max(1.0, hi - lo);
  while (gap(lo) < 0.0) {
    lo -= step;
    step *= 2.0;
  }
  step = std::max(1.0, hi - lo);
  while (gap(hi) > 0.0) {
    hi += step;
    step *= 2.0;
  }
  const RootResult root = solve_bracketed(gap, gap_slope, lo, hi, kMuTol, kMaxIter);
  const double mu = root.x;
  const double nu = 0.5 * (curve_nu(CurveKind::Forward, Family::One, mu, l) +
                           curve_nu(CurveKind::Backward, Family::Two, mu, r));
  return State::from_mu_nu(mu, nu, g);
}

}  // namespace valveflow
