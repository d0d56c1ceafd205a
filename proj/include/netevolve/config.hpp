#ifndef NETEVOLVE_CONFIG_HPP
#define NETEVOLVE_CONFIG_HPP

#include <string>
#include <vector>

#include "netevolve/ga_engine.hpp"

namespace netevolve {

// Applies one key=value entry to the config. Keys mirror GaConfig fields;
// unknown keys and unparsable values are ConfigErrors. Range validation
// happens in GaConfig::check() once all entries are applied.
void apply_config_entry(GaConfig& cfg, const std::string& key,
                        const std::string& value);

// The documented key set, in the order listed in the README.
std::vector<std::string> config_keys();

// Loads a flat key=value config file ('#' starts a comment, blank lines are
// skipped). Missing keys keep their defaults; an empty file is the default
// config. Throws IoError or ConfigError.
GaConfig load_config(const std::string& path);

}  // namespace netevolve

#endif  // NETEVOLVE_CONFIG_HPP
