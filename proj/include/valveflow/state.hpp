#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace valveflow {

/// Raised when an input leaves the admissible state space or a flux window.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Smallest density accepted for a State; anything below is treated as vacuum.
inline constexpr double kMinDensity = 1e-12;

/// Isothermal gas, p = a^2 rho.
class GasParams {
 public:
  explicit GasParams(double sound_speed);

  double a() const { return a_; }
  double a2() const { return a_ * a_; }
  double pressure(double rho) const { return a_ * a_ * rho; }

 private:
  double a_;
};

struct MuNu {
  double mu;
  double nu;
};

enum class SonicClass { Subsonic, Sonic, Supersonic };

/// Conservative state (rho, q). rho >= kMinDensity is enforced on construction.
class State {
 public:
  State(double rho, double q);

  static State from_mu_nu(double mu, double nu, const GasParams& g);

  double rho() const { return rho_; }
  double q() const { return q_; }
  double v() const { return q_ / rho_; }

  State mirrored() const { return State(rho_, -q_); }

  friend bool operator==(const State&, const State&) = default;

 private:
  double rho_;
  double q_;
};

MuNu to_mu_nu(const State& u, const GasParams& g);
double pressure(const State& u, const GasParams& g);

/// Riemann invariants w = nu + mu and z = nu - mu.
double riemann_w(const State& u, const GasParams& g);
double riemann_z(const State& u, const GasParams& g);

std::pair<double, double> eigenvalues(const State& u, const GasParams& g);
double eigenvalue(int family, const State& u, const GasParams& g);

struct Flux {
  double mass;
  double momentum;
};

Flux flux(const State& u, const GasParams& g);

SonicClass sonic_class(const State& u, const GasParams& g);

/// Relative state comparison used throughout the solver checks.
bool nearly_equal(const State& x, const State& y, const GasParams& g, double tol);

std::string to_string(const State& u);
const char* to_string(SonicClass c);

}  // namespace valveflow
