#include "envent/config_io.hpp"

#include "envent/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace envent {

namespace {

using nlohmann::json;

double number(const json& j, const std::string& key) {
  const auto it = j.find(key);
  if (!it->is_number()) throw ConfigError("config key '" + key + "' must be a number");
  return it->get<double>();
}

bool has(const json& j, const char* key) { return j.contains(key); }

}  // namespace

PhysicalConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {
      "mass_kg",         "base_frequency_ghz", "frequencies_ghz",   "bath_dimension", "gamma_ghz",
      "cutoff_mev",      "cutoff_ghz",         "sound_speed_mps",   "temperature_ratio", "temperature_k",
      "geometry.kind",   "geometry.R_nm",      "geometry.r_nm",     "geometry.positions_nm"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) throw ConfigError("unknown config key '" + k + "'");

  for (const char* req : {"frequencies_ghz", "bath_dimension", "gamma_ghz", "sound_speed_mps", "geometry.kind"})
    if (!has(j, req)) throw ConfigError(std::string("missing config key '") + req + "'");
  if (has(j, "cutoff_mev") == has(j, "cutoff_ghz")) throw ConfigError("give exactly one of cutoff_mev, cutoff_ghz");
  if (has(j, "temperature_ratio") == has(j, "temperature_k"))
    throw ConfigError("give exactly one of temperature_ratio, temperature_k");

  PhysicalConfig c;
  if (has(j, "mass_kg")) c.mass_kg = number(j, "mass_kg");
  if (has(j, "base_frequency_ghz")) c.base_frequency = number(j, "base_frequency_ghz") * constants::ghz;
  const json& f = j["frequencies_ghz"];
  if (!f.is_array() || f.empty()) throw ConfigError("frequencies_ghz must be a nonempty array");
  for (const auto& v : f) {
    if (!v.is_number()) throw ConfigError("frequencies_ghz entries must be numbers");
    c.oscillator_frequencies.push_back(v.get<double>() * constants::ghz);
  }
  if (!j["bath_dimension"].is_number_integer()) throw ConfigError("bath_dimension must be an integer");
  c.bath_dimension = bath_dimension_from_int(j["bath_dimension"].get<int>());
  c.coupling = number(j, "gamma_ghz") * constants::ghz;
  c.cutoff = has(j, "cutoff_mev") ? cutoff_from_mev(number(j, "cutoff_mev")) : number(j, "cutoff_ghz") * constants::ghz;
  c.sound_speed = number(j, "sound_speed_mps");
  c.temperature = has(j, "temperature_k") ? Temperature::kelvin(number(j, "temperature_k"))
                                          : Temperature::ratio(number(j, "temperature_ratio"));

  if (!j["geometry.kind"].is_string()) throw ConfigError("geometry.kind must be a string");
  c.geometry.kind = geometry_kind_from_string(j["geometry.kind"].get<std::string>());
  if (has(j, "geometry.R_nm")) c.geometry.R = number(j, "geometry.R_nm") * constants::nm;
  if (has(j, "geometry.r_nm")) c.geometry.r = number(j, "geometry.r_nm") * constants::nm;
  if (has(j, "geometry.positions_nm")) {
    const json& p = j["geometry.positions_nm"];
    if (!p.is_array()) throw ConfigError("geometry.positions_nm must be an array of coordinate arrays");
    for (const auto& row : p) {
      if (!row.is_array()) throw ConfigError("geometry.positions_nm must be an array of coordinate arrays");
      std::vector<double> pt;
      for (const auto& v : row) {
        if (!v.is_number()) throw ConfigError("geometry.positions_nm entries must be numbers");
        pt.push_back(v.get<double>() * constants::nm);
      }
      c.geometry.positions.push_back(pt);
    }
  }
  const bool custom = c.geometry.kind == Geometry::Kind::Custom;
  if (custom != has(j, "geometry.positions_nm"))
    throw ConfigError("geometry.positions_nm is required for, and only allowed with, geometry.kind = custom");
  const bool needs_R = c.geometry.kind != Geometry::Kind::Single && !custom;
  if (needs_R && !has(j, "geometry.R_nm")) throw ConfigError("geometry.R_nm is required for this geometry");
  const bool takes_r = c.geometry.kind == Geometry::Kind::Linear || c.geometry.kind == Geometry::Kind::IsoscelesPerp;
  if (!takes_r && has(j, "geometry.r_nm")) throw ConfigError("geometry.r_nm is not used by this geometry");

  c.validate();
  return c;
}

PhysicalConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string dump_config(const PhysicalConfig& c) {
  json j;
  j["mass_kg"] = c.mass_kg;
  j["base_frequency_ghz"] = c.base_frequency / constants::ghz;
  json f = json::array();
  for (double w : c.oscillator_frequencies) f.push_back(w / constants::ghz);
  j["frequencies_ghz"] = f;
  j["bath_dimension"] = to_int(c.bath_dimension);
  j["gamma_ghz"] = c.coupling / constants::ghz;
  j["cutoff_ghz"] = c.cutoff / constants::ghz;
  j["sound_speed_mps"] = c.sound_speed;
  if (c.temperature.kind == Temperature::Kind::Kelvin)
    j["temperature_k"] = c.temperature.value;
  else
    j["temperature_ratio"] = c.temperature.value;
  j["geometry.kind"] = to_string(c.geometry.kind);
  const auto k = c.geometry.kind;
  if (k == Geometry::Kind::Custom) {
    json p = json::array();
    for (const auto& row : c.geometry.positions) {
      json r = json::array();
      for (double v : row) r.push_back(v / constants::nm);
      p.push_back(r);
    }
    j["geometry.positions_nm"] = p;
  } else if (k != Geometry::Kind::Single) {
    j["geometry.R_nm"] = c.geometry.R / constants::nm;
  }
  if (k == Geometry::Kind::Linear || k == Geometry::Kind::IsoscelesPerp) j["geometry.r_nm"] = c.geometry.r / constants::nm;
  return j.dump();
}

}  // namespace envent
