#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "valveflow/riemann.hpp"
#include "valveflow/state.hpp"

namespace valveflow {

enum class ValveMode { Open, Active };

struct ValveDecision {
  ValveMode mode = ValveMode::Open;
  double q_m = 0.0;  // meaningful only when Active
  double gap = 0.0;  // model-specific pressure gap that drove the decision

  static ValveDecision open(double gap) { return {ValveMode::Open, 0.0, gap}; }
  static ValveDecision active(double q_m, double gap) { return {ValveMode::Active, q_m, gap}; }
};

/// No admissible valve flux exists for the given data.
class NoValveSolution : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Decision contract of a valve: open or active, and the flux when active.
/// Implementations are stateless; decide() must be deterministic.
class ValveModel {
 public:
  virtual ~ValveModel() = default;
  virtual ValveDecision decide(const State& u_l, const State& u_r, const GasParams& g) const = 0;
  virtual std::string type() const = 0;
};

using ValvePtr = std::shared_ptr<const ValveModel>;

/// Closes when the closed-valve pressure jump |p_check(0,u_r) - p_hat(0,u_l)| <= M.
class ElectronicValve final : public ValveModel {
 public:
  explicit ElectronicValve(double threshold);
  ValveDecision decide(const State& u_l, const State& u_r, const GasParams& g) const override;
  std::string type() const override { return "electronic"; }
  double threshold() const { return m_; }

 private:
  double m_;
};

/// Closes when the raw pressure jump |p(rho_r) - p(rho_l)| <= M.
class SpringValve final : public ValveModel {
 public:
  explicit SpringValve(double threshold);
  ValveDecision decide(const State& u_l, const State& u_r, const GasParams& g) const override;
  std::string type() const override { return "spring"; }
  double threshold() const { return m_; }

 private:
  double m_;
};

/// Wraps another valve and forbids negative flow through x = 0.
class OneWayValve final : public ValveModel {
 public:
  explicit OneWayValve(ValvePtr inner);
  ValveDecision decide(const State& u_l, const State& u_r, const GasParams& g) const override;
  std::string type() const override { return "one_way"; }
  const ValvePtr& inner() const { return inner_; }

 private:
  ValvePtr inner_;
};

/// One-way valve with quadratic pressure loss:
///   p_check(q_m, u_r) = p_hat(q_m, u_l) - a^2 k q_m^2 / p_hat(q_m, u_l),  q_m >= 0.
/// Shuts (q_m = 0) when the downstream closed-valve pressure already exceeds
/// the upstream one; throws NoValveSolution if the law has no root in the window.
class PressureDropValve final : public ValveModel {
 public:
  explicit PressureDropValve(double loss_coefficient);
  ValveDecision decide(const State& u_l, const State& u_r, const GasParams& g) const override;
  std::string type() const override { return "pressure_drop"; }
  double loss_coefficient() const { return k_; }

  /// Residual of the pressure-drop law at flux q.
  double residual(double q, const State& u_l, const State& u_r, const GasParams& g) const;

 private:
  double k_;
};

/// Signed closed-valve pressure jump p_check(0, u_r) - p_hat(0, u_l).
double closed_valve_gap(const State& u_l, const State& u_r, const GasParams& g);

/// Coupling Riemann solver: RS_p when the valve is open; otherwise a 1-wave
/// into hat(q_m, u_l), a stationary under-compressive jump, and a 2-wave
/// out of check(q_m, u_r).
WaveFan solve_coupled(const State& u_l, const State& u_r, const ValveModel& model,
                      const GasParams& g);

/// Same construction for an explicit decision (skips the model).
WaveFan solve_coupled(const State& u_l, const State& u_r, const ValveDecision& decision,
                      const GasParams& g);

const char* to_string(ValveMode m);

}  // namespace valveflow
