#include "valveflow/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>

namespace valveflow {

namespace {

double parse_number(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double x = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(x)) {
    throw ConfigError("cannot parse " + what + " from '" + text + "'");
  }
  return x;
}

double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  if (!j[key].is_number()) throw ConfigError(where + ": key '" + key + "' must be a number");
  return j[key].get<double>();
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

State parse_state(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("state must be RHO,Q, got '" + text + "'");
  const double rho = parse_number(text.substr(0, comma), "density");
  const double q = parse_number(text.substr(comma + 1), "flux");
  try {
    return State(rho, q);
  } catch (const DomainError& e) {
    throw ConfigError("state '" + text + "': " + e.what());
  }
}

Range parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("range must be LO:HI, got '" + text + "'");
  const Range r{parse_number(text.substr(0, colon), "range start"),
                parse_number(text.substr(colon + 1), "range end")};
  if (!(r.lo < r.hi)) throw ConfigError("range must satisfy LO < HI, got '" + text + "'");
  return r;
}

ValvePtr valve_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("valve: expected an object");
  if (!j.contains("type") || !j["type"].is_string()) {
    throw ConfigError("valve: missing string key 'type'");
  }
  const std::string type = j["type"].get<std::string>();
  try {
    if (type == "electronic") return std::make_shared<ElectronicValve>(require_number(j, "M", "valve"));
    if (type == "spring") return std::make_shared<SpringValve>(require_number(j, "M", "valve"));
    if (type == "pressure_drop") {
      return std::make_shared<PressureDropValve>(require_number(j, "k", "valve"));
    }
    if (type == "one_way") {
      if (!j.contains("inner")) throw ConfigError("valve: missing key 'inner'");
      return std::make_shared<OneWayValve>(valve_from_json(j["inner"]));
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("valve: ") + e.what());
  }
  throw ConfigError("valve: unknown type '" + type + "'");
}

nlohmann::json valve_to_json(const ValveModel& v) {
  nlohmann::json j{{"type", v.type()}};
  if (auto* e = dynamic_cast<const ElectronicValve*>(&v)) j["M"] = e->threshold();
  if (auto* s = dynamic_cast<const SpringValve*>(&v)) j["M"] = s->threshold();
  if (auto* p = dynamic_cast<const PressureDropValve*>(&v)) j["k"] = p->loss_coefficient();
  if (auto* o = dynamic_cast<const OneWayValve*>(&v)) j["inner"] = valve_to_json(*o->inner());
  return j;
}

nlohmann::json to_json(const State& u) { return {{"rho", u.rho()}, {"q", u.q()}}; }

nlohmann::json to_json(const RegimeReport& r) {
  return {{"open_active", to_string(r.open_active)},
          {"influence", to_string(r.influence)},
          {"o_sub", to_string(r.o_sub)},
          {"coherent", r.coherent},
          {"consistent", r.consistent},
          {"l1_continuous", r.l1_continuous},
          {"gap", r.gap},
          {"q_tilde", r.q_tilde}};
}

nlohmann::json fan_to_json(const WaveFan& fan, const GasParams& g,
                           const ValveDecision* decision) {
  nlohmann::json waves = nlohmann::json::array();
  for (const Wave& w : fan.waves) {
    waves.push_back({{"family", to_string(w.family)},
                     {"kind", to_string(w.kind)},
                     {"left", to_json(w.left)},
                     {"right", to_json(w.right)},
                     {"speed_lo", w.speed_lo},
                     {"speed_hi", w.speed_hi}});
  }
  const auto [minus, plus] = traces(fan, g);
  nlohmann::json j{{"a", g.a()},
                   {"left", to_json(fan.left_datum)},
                   {"right", to_json(fan.right_datum)},
                   {"waves", waves},
                   {"traces", {{"minus", to_json(minus)}, {"plus", to_json(plus)}}}};
  if (decision) {
    j["mode"] = to_string(decision->mode);
    j["q_m"] = decision->mode == ValveMode::Active ? nlohmann::json(decision->q_m)
                                                   : nlohmann::json(nullptr);
    j["gap"] = decision->gap;
  } else {
    j["mode"] = nullptr;
    j["q_m"] = nullptr;
  }
  return j;
}

void write_snapshot_header(std::ostream& os) { os << "t,x,rho,q,v,p,mu,nu\n"; }

void write_snapshot(std::ostream& os, const Grid1D& grid, const GasParams& g) {
  const std::string t = format_double(grid.time);
  for (int j = 0; j < grid.n_cells; ++j) {
    const State& u = grid.cells[j];
    const MuNu c = to_mu_nu(u, g);
    os << t << ',' << format_double(grid.center(j)) << ',' << format_double(u.rho()) << ','
       << format_double(u.q()) << ',' << format_double(u.v()) << ','
       << format_double(pressure(u, g)) << ',' << format_double(c.mu) << ','
       << format_double(c.nu) << '\n';
  }
}

void write_valve_log(std::ostream& os, const std::vector<ValveEvent>& events) {
  os << "t,mode,q_m,gap\n";
  for (const ValveEvent& e : events) {
    os << format_double(e.t) << ',' << to_string(e.decision.mode) << ','
       << format_double(e.decision.q_m) << ',' << format_double(e.decision.gap) << '\n';
  }
}

}  // namespace valveflow
