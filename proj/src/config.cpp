#include "maxrange/config.hpp"

#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "maxrange/error.hpp"
#include "maxrange/units.hpp"

namespace maxrange {
namespace {

using nlohmann::json;

const json& section(const json& root, const char* name, std::initializer_list<const char*> keys) {
  if (!root.contains(name)) throw ConfigError(fmt::format("config: missing section '{}'", name));
  const json& s = root.at(name);
  if (!s.is_object()) throw ConfigError(fmt::format("config: section '{}' must be an object", name));
  const std::set<std::string> known(keys.begin(), keys.end());
  for (const auto& [key, _] : s.items()) {
    if (!known.contains(key)) throw ConfigError(fmt::format("config: unknown key '{}.{}'", name, key));
  }
  return s;
}

double number(const json& s, const char* section_name, const char* key) {
  if (!s.contains(key)) throw ConfigError(fmt::format("config: missing key '{}.{}'", section_name, key));
  const json& v = s.at(key);
  if (!v.is_number()) throw ConfigError(fmt::format("config: '{}.{}' must be a number", section_name, key));
  return v.get<double>();
}

}  // namespace

void Limits::validate() const {
  if (!(speed_restriction_kias > 0.0)) throw ConfigError("limits: speed_restriction_kias must be positive");
  if (!(restriction_ceiling_ft > acceleration_altitude_ft)) {
    throw ConfigError("limits: restriction_ceiling_ft must exceed acceleration_altitude_ft");
  }
  if (!(final_approach_fix_ft < restriction_ceiling_ft)) {
    throw ConfigError("limits: final_approach_fix_ft must be below restriction_ceiling_ft");
  }
  if (!(units::ft_to_m(acceleration_altitude_ft) >= Atmosphere::kMinAltitude) ||
      !(units::ft_to_m(final_approach_fix_ft) >= Atmosphere::kMinAltitude)) {
    throw ConfigError("limits: altitudes below the atmosphere model floor");
  }
}

void Config::validate() const {
  try {
    aircraft.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  limits.validate();
}

MissionSpec Config::mission(double start_weight, double destination_distance) const {
  MissionSpec m;
  m.start_weight = start_weight;
  m.destination_distance = destination_distance;
  m.destination_altitude = units::ft_to_m(limits.final_approach_fix_ft);
  m.speed_restriction = units::kt_to_mps(limits.speed_restriction_kias);
  m.restriction_ceiling = units::ft_to_m(limits.restriction_ceiling_ft);
  m.acceleration_altitude = units::ft_to_m(limits.acceleration_altitude_ft);
  return m;
}

Config parse_config(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(fmt::format("config: {}", e.what()));
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  const std::set<std::string> sections{"aircraft", "propulsion", "atmosphere", "limits"};
  for (const auto& [key, _] : root.items()) {
    if (!sections.contains(key)) throw ConfigError(fmt::format("config: unknown section '{}'", key));
  }

  Config c;
  const json& a = section(root, "aircraft", {"name", "wing_area_m2", "cd0", "k", "r_stall"});
  if (a.contains("name")) {
    if (!a.at("name").is_string()) throw ConfigError("config: 'aircraft.name' must be a string");
    c.aircraft.name = a.at("name").get<std::string>();
  }
  c.aircraft.wing_area = number(a, "aircraft", "wing_area_m2");
  c.aircraft.polar.cd0 = number(a, "aircraft", "cd0");
  c.aircraft.polar.k = number(a, "aircraft", "k");
  c.aircraft.r_stall = number(a, "aircraft", "r_stall");

  const json& p = section(root, "propulsion", {"t_max_sl_N", "idle_fraction", "thrust_exponent", "c_sl_per_s",
                                               "sfc_exponent", "power_setting"});
  c.aircraft.propulsion.t_max_sl = number(p, "propulsion", "t_max_sl_N");
  c.aircraft.propulsion.idle_fraction = number(p, "propulsion", "idle_fraction");
  c.aircraft.propulsion.thrust_exponent = number(p, "propulsion", "thrust_exponent");
  c.aircraft.propulsion.c_sl = number(p, "propulsion", "c_sl_per_s");
  c.aircraft.propulsion.sfc_exponent = number(p, "propulsion", "sfc_exponent");
  c.aircraft.propulsion.power_setting = number(p, "propulsion", "power_setting");

  const json& m = section(root, "atmosphere", {"rho_sl", "scale_height_m"});
  c.aircraft.atmosphere.rho_sl = number(m, "atmosphere", "rho_sl");
  c.aircraft.atmosphere.scale_height = number(m, "atmosphere", "scale_height_m");

  const json& l = section(root, "limits", {"speed_restriction_kias", "restriction_ceiling_ft",
                                           "acceleration_altitude_ft", "final_approach_fix_ft"});
  c.limits.speed_restriction_kias = number(l, "limits", "speed_restriction_kias");
  c.limits.restriction_ceiling_ft = number(l, "limits", "restriction_ceiling_ft");
  c.limits.acceleration_altitude_ft = number(l, "limits", "acceleration_altitude_ft");
  c.limits.final_approach_fix_ft = number(l, "limits", "final_approach_fix_ft");

  c.validate();
  return c;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("config: cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string emit_config(const Config& c) {
  json root;
  root["aircraft"] = {{"name", c.aircraft.name},
                      {"wing_area_m2", c.aircraft.wing_area},
                      {"cd0", c.aircraft.polar.cd0},
                      {"k", c.aircraft.polar.k},
                      {"r_stall", c.aircraft.r_stall}};
  const auto& p = c.aircraft.propulsion;
  root["propulsion"] = {{"t_max_sl_N", p.t_max_sl},         {"idle_fraction", p.idle_fraction},
                        {"thrust_exponent", p.thrust_exponent}, {"c_sl_per_s", p.c_sl},
                        {"sfc_exponent", p.sfc_exponent},     {"power_setting", p.power_setting}};
  root["atmosphere"] = {{"rho_sl", c.aircraft.atmosphere.rho_sl},
                        {"scale_height_m", c.aircraft.atmosphere.scale_height}};
  root["limits"] = {{"speed_restriction_kias", c.limits.speed_restriction_kias},
                    {"restriction_ceiling_ft", c.limits.restriction_ceiling_ft},
                    {"acceleration_altitude_ft", c.limits.acceleration_altitude_ft},
                    {"final_approach_fix_ft", c.limits.final_approach_fix_ft}};
  return root.dump(2) + "\n";
}

}  // namespace maxrange
