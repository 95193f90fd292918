#include "valveflow/state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace valveflow {

GasParams::GasParams(double sound_speed) : a_(sound_speed) {
  if (!(sound_speed > 0.0) || !std::isfinite(sound_speed)) {
    throw DomainError("sound speed must be positive and finite");
  }
}

State::State(double rho, double q) : rho_(rho), q_(q) {
  if (!std::isfinite(rho) || !std::isfinite(q)) {
    throw DomainError("state components must be finite");
  }
  if (rho < kMinDensity) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "density %.6g below admissible minimum %.1e", rho,
                  kMinDensity);
    throw DomainError(buf);
  }
}

State State::from_mu_nu(double mu, double nu, const GasParams& g) {
  const double rho = std::exp(mu);
  return State(rho, g.a() * nu * rho);
}

MuNu to_mu_nu(const State& u, const GasParams& g) {
  return {std::log(u.rho()), u.q() / (g.a() * u.rho())};
}

double pressure(const State& u, const GasParams& g) { return g.pressure(u.rho()); }

double riemann_w(const State& u, const GasParams& g) {
  const auto [mu, nu] = to_mu_nu(u, g);
  return nu + mu;
}

double riemann_z(const State& u, const GasParams& g) {
  const auto [mu, nu] = to_mu_nu(u, g);
  return nu - mu;
}

std::pair<double, double> eigenvalues(const State& u, const GasParams& g) {
  const double v = u.v();
  return {v - g.a(), v + g.a()};
}

double eigenvalue(int family, const State& u, const GasParams& g) {
  return family == 1 ? u.v() - g.a() : u.v() + g.a();
}

Flux flux(const State& u, const GasParams& g) {
  return {u.q(), u.q() * u.q() / u.rho() + g.a2() * u.rho()};
}

SonicClass sonic_class(const State& u, const GasParams& g) {
  const double nu = std::abs(u.q() / (g.a() * u.rho()));
  if (nu < 1.0) return SonicClass::Subsonic;
  if (nu == 1.0) return SonicClass::Sonic;
  return SonicClass::Supersonic;
}

bool nearly_equal(const State& x, const State& y, const GasParams& g, double tol) {
  const double rho_scale = std::max({1.0, x.rho(), y.rho()});
  const double q_scale = std::max({1.0, std::abs(x.q()), std::abs(y.q()), g.a() * rho_scale});
  return std::abs(x.rho() - y.rho()) <= tol * rho_scale &&
         std::abs(x.q() - y.q()) <= tol * q_scale;
}

std::string to_string(const State& u) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g)", u.rho(), u.q());
  return buf;
}

const char* to_string(SonicClass c) {
  switch (c) {
    case SonicClass::Subsonic: return "subsonic";
    case SonicClass::Sonic: return "sonic";
    case SonicClass::Supersonic: return "supersonic";
  }
  return "?";
}

}  // namespace valveflow
