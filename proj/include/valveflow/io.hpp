#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "valveflow/classification.hpp"
#include "valveflow/godunov.hpp"
#include "valveflow/riemann.hpp"
#include "valveflow/valve.hpp"

namespace valveflow {

/// Malformed user input (flags, config files, valve records).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Round-trip decimal rendering (17 significant digits).
std::string format_double(double x);

/// "RHO,Q" -> State; ConfigError on malformed text, DomainError outside the state space.
State parse_state(const std::string& text);

struct Range {
  double lo;
  double hi;
};
/// "LO:HI" with LO < HI.
Range parse_range(const std::string& text);

/// Tagged valve record:
///   {"type":"electronic","M":..} | {"type":"spring","M":..}
///   {"type":"pressure_drop","k":..} | {"type":"one_way","inner":{...}}
ValvePtr valve_from_json(const nlohmann::json& j);
nlohmann::json valve_to_json(const ValveModel& v);

nlohmann::json to_json(const State& u);
nlohmann::json to_json(const RegimeReport& r);
/// Wave list, traces and (when a decision is given) the valve mode and q_m.
nlohmann::json fan_to_json(const WaveFan& fan, const GasParams& g,
                           const ValveDecision* decision = nullptr);

void write_snapshot_header(std::ostream& os);
/// One row per cell: t,x,rho,q,v,p,mu,nu.
void write_snapshot(std::ostream& os, const Grid1D& grid, const GasParams& g);
void write_valve_log(std::ostream& os, const std::vector<ValveEvent>& events);

}  // namespace valveflow
