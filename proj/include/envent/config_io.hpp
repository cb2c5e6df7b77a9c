#pragma once

#include "envent/units.hpp"

#include <string>

namespace envent {

// Flat JSON configuration. Keys:
//   mass_kg, base_frequency_ghz, frequencies_ghz, bath_dimension, gamma_ghz,
//   cutoff_mev | cutoff_ghz, sound_speed_mps, temperature_ratio | temperature_k,
//   geometry.kind, geometry.R_nm, geometry.r_nm, geometry.positions_nm
// "ghz" values are angular frequencies in units of 1e9 rad/s. Unknown keys are rejected.
PhysicalConfig parse_config(const std::string& json_text);
PhysicalConfig load_config(const std::string& path);

// single-line flat JSON that parse_config reads back to the same config
std::string dump_config(const PhysicalConfig& cfg);

}  // namespace envent
