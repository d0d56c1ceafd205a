#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "netevolve/config.hpp"

using namespace netevolve;

namespace {

std::filesystem::path write_temp(const std::string& name,
                                 const std::string& text) {
    const auto dir =
        std::filesystem::temp_directory_path() / "netevolve_cfg_test";
    std::filesystem::create_directories(dir);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    out << text;
    return path;
}

}  // namespace

TEST_CASE("load_config reads key=value pairs and keeps defaults elsewhere") {
    const auto path =
        write_temp("basic.cfg", "link_failure_prob=0.01\nrepair_time=2\n");
    const GaConfig cfg = load_config(path.string());
    CHECK(cfg.env.link_failure_prob == 0.01);
    CHECK(cfg.env.repair_time == 2);
    // untouched defaults
    CHECK(cfg.strategy == Strategy::One);
    CHECK(cfg.offspring == 10);
    CHECK(cfg.generations == 150);
    CHECK(cfg.network.n_clients == 20);
    CHECK(cfg.network.n_servers == 3);
    CHECK(cfg.network.t_max == 10.0);
    CHECK(cfg.network.server_capacity == 50.0);
    CHECK(cfg.n_pairs == 100);
}

TEST_CASE("an empty config file is the default config") {
    const auto path = write_temp("empty.cfg", "");
    const GaConfig cfg = load_config(path.string());
    const GaConfig defaults;
    CHECK(cfg.master_seed == defaults.master_seed);
    CHECK(cfg.generations == defaults.generations);
    CHECK(cfg.mutations_min == defaults.mutations_min);
    CHECK(cfg.mutations_max == defaults.mutations_max);
}

TEST_CASE("comments and blank lines are ignored") {
    const auto path = write_temp("comments.cfg",
                                 "# a comment\n\n  strategy = 2  \n"
                                 "offspring=7 # trailing comment\n");
    const GaConfig cfg = load_config(path.string());
    CHECK(cfg.strategy == Strategy::Two);
    CHECK(cfg.offspring == 7);
}

TEST_CASE("load_config rejects bad input") {
    SUBCASE("unknown key") {
        const auto path = write_temp("unknown.cfg", "turbo=yes\n");
        CHECK_THROWS_AS(load_config(path.string()), ConfigError);
    }
    SUBCASE("out-of-range value") {
        const auto path = write_temp("range.cfg", "repair_time=0\n");
        CHECK_THROWS_AS(load_config(path.string()), ConfigError);
    }
    SUBCASE("non-numeric value") {
        const auto path = write_temp("nan.cfg", "generations=soon\n");
        CHECK_THROWS_AS(load_config(path.string()), ConfigError);
    }
    SUBCASE("bad strategy") {
        const auto path = write_temp("strategy.cfg", "strategy=3\n");
        CHECK_THROWS_AS(load_config(path.string()), ConfigError);
    }
    SUBCASE("missing separator") {
        const auto path = write_temp("sep.cfg", "generations 100\n");
        CHECK_THROWS_AS(load_config(path.string()), ConfigError);
    }
    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_config("/nonexistent/nowhere.cfg"), IoError);
    }
}

TEST_CASE("apply_config_entry covers the documented key set") {
    GaConfig cfg;
    for (const std::string& key : config_keys()) {
        // every documented key parses some value
        if (key == "strategy") {
            apply_config_entry(cfg, key, "2");
        } else if (key == "master_seed") {
            apply_config_entry(cfg, key, "18446744073709551615");
        } else {
            apply_config_entry(cfg, key, "1");
        }
    }
    CHECK(cfg.strategy == Strategy::Two);
    CHECK(cfg.master_seed == 18446744073709551615ull);
    CHECK(cfg.network.grid_width == 1);
    CHECK_THROWS_AS(apply_config_entry(cfg, "nonsense", "1"), ConfigError);
}
