#include "netevolve/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace netevolve {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

long long parse_int(const std::string& key, const std::string& value) {
    long long out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key, "'" + value + "' is not an integer");
    }
    return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t out = 0;
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError(key, "'" + value + "' is not an unsigned integer");
    }
    return out;
}

double parse_double(const std::string& key, const std::string& value) {
    if (value.empty()) throw ConfigError(key, "empty value");
    char* end = nullptr;
    const double out = std::strtod(value.c_str(), &end);
    if (end != value.c_str() + value.size()) {
        throw ConfigError(key, "'" + value + "' is not a number");
    }
    return out;
}

}  // namespace

void apply_config_entry(GaConfig& cfg, const std::string& key,
                        const std::string& value) {
    if (key == "strategy") {
        if (value == "1") {
            cfg.strategy = Strategy::One;
        } else if (value == "2") {
            cfg.strategy = Strategy::Two;
        } else {
            throw ConfigError(key, "must be 1 or 2");
        }
    } else if (key == "offspring") {
        cfg.offspring = static_cast<int>(parse_int(key, value));
    } else if (key == "generations") {
        cfg.generations = static_cast<int>(parse_int(key, value));
    } else if (key == "mutations_min") {
        cfg.mutations_min = static_cast<int>(parse_int(key, value));
    } else if (key == "mutations_max") {
        cfg.mutations_max = static_cast<int>(parse_int(key, value));
    } else if (key == "link_failure_prob") {
        cfg.env.link_failure_prob = parse_double(key, value);
    } else if (key == "node_failure_prob") {
        cfg.env.node_failure_prob = parse_double(key, value);
    } else if (key == "repair_time") {
        cfg.env.repair_time = static_cast<int>(parse_int(key, value));
    } else if (key == "n_clients") {
        cfg.network.n_clients = static_cast<int>(parse_int(key, value));
    } else if (key == "n_servers") {
        cfg.network.n_servers = static_cast<int>(parse_int(key, value));
    } else if (key == "grid_width") {
        cfg.network.grid_width = static_cast<int>(parse_int(key, value));
    } else if (key == "grid_height") {
        cfg.network.grid_height = static_cast<int>(parse_int(key, value));
    } else if (key == "min_spacing") {
        cfg.network.min_spacing = parse_double(key, value);
    } else if (key == "t_max") {
        cfg.network.t_max = parse_double(key, value);
    } else if (key == "server_capacity") {
        cfg.network.server_capacity = parse_double(key, value);
        cfg.network.auto_capacity = false;
    } else if (key == "target_utilization") {
        cfg.network.target_utilization = parse_double(key, value);
        cfg.network.auto_capacity = true;
    } else if (key == "maintain_low") {
        cfg.maintain.low = parse_double(key, value);
    } else if (key == "maintain_high") {
        cfg.maintain.high = parse_double(key, value);
    } else if (key == "server_add_prob") {
        cfg.maintain.server_prob = parse_double(key, value);
    } else if (key == "mutation_noise_prob") {
        cfg.mutation_noise_prob = parse_double(key, value);
    } else if (key == "cost_per_unit_length") {
        cfg.cost_per_unit_length = parse_double(key, value);
    } else if (key == "n_pairs") {
        cfg.n_pairs = static_cast<int>(parse_int(key, value));
    } else if (key == "master_seed") {
        cfg.master_seed = parse_u64(key, value);
    } else {
        throw ConfigError(key, "unknown key");
    }
}

std::vector<std::string> config_keys() {
    return {"strategy",         "offspring",          "generations",
            "mutations_min",    "mutations_max",      "link_failure_prob",
            "node_failure_prob", "repair_time",       "n_clients",
            "n_servers",        "grid_width",         "grid_height",
            "min_spacing",      "t_max",              "server_capacity",
            "target_utilization", "maintain_low",     "maintain_high",
            "server_add_prob",  "mutation_noise_prob", "cost_per_unit_length",
            "n_pairs",          "master_seed"};
}

GaConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");

    GaConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no),
                              "expected key=value, got '" + line + "'");
        }
        apply_config_entry(cfg, trim(line.substr(0, eq)),
                           trim(line.substr(eq + 1)));
    }
    cfg.check();
    return cfg;
}

}  // namespace netevolve
