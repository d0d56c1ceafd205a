#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "netevolve/config.hpp"
#include "netevolve/core_model.hpp"
#include "netevolve/experiments.hpp"
#include "netevolve/ga_engine.hpp"

namespace fs = std::filesystem;
using namespace netevolve;

namespace {

std::string resolve_out_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("NETEVOLVE_OUT"); env && *env) {
        return env;
    }
    return "out";
}

void apply_overrides(GaConfig& cfg, const std::vector<std::string>& sets,
                     bool seed_given, std::uint64_t seed) {
    for (const std::string& entry : sets) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(entry, "expected key=value");
        }
        apply_config_entry(cfg, entry.substr(0, eq), entry.substr(eq + 1));
    }
    if (seed_given) cfg.master_seed = seed;
    cfg.check();
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

int cmd_run(const std::string& config_path,
            const std::vector<std::string>& sets, bool seed_given,
            std::uint64_t seed, const std::string& out_flag) {
    GaConfig cfg =
        config_path.empty() ? GaConfig{} : load_config(config_path);
    apply_overrides(cfg, sets, seed_given, seed);

    Network final_best;
    const std::vector<GenerationRecord> records = run(cfg, &final_best);

    const fs::path out_dir = resolve_out_dir(out_flag);
    fs::create_directories(out_dir);

    CellRun single;
    single.seed = cfg.master_seed;
    single.cfg = cfg;
    single.records = records;
    write_generations_csv({single}, (out_dir / "generations.csv").string());
    write_plot_data(records, (out_dir / "plot.dat").string());
    {
        std::ofstream snap(out_dir / "final_network.json", std::ios::binary);
        if (!snap) throw IoError("cannot write final_network.json");
        snap << serialize(final_best);
    }

    const int window_start = cfg.generations >= 50 ? 50 : 1;
    const WindowStats stats = summarize(records, window_start, cfg.generations);
    std::cout << "final_fitness=" << fmt6(records.back().best.fitness)
              << " mean_reliability[" << window_start << "-" << cfg.generations
              << "]=" << fmt6(stats.mean_reliability) << " mean_cost["
              << window_start << "-" << cfg.generations
              << "]=" << fmt6(stats.mean_cost) << " out=" << out_dir.string()
              << "\n";
    return 0;
}

int cmd_experiment(const std::string& which,
                   const std::vector<std::string>& sets, bool seed_given,
                   std::uint64_t seed, int replicates, int threads,
                   const std::string& out_flag) {
    Scenario scenario;
    try {
        scenario = make_preset(which);
    } catch (const ConfigError&) {
        if (!fs::exists(which)) {
            throw ConfigError("experiment",
                              "'" + which + "' is neither a preset nor a file");
        }
        scenario = load_scenario(which);
    }
    apply_overrides(scenario.base, sets, seed_given, seed);
    if (replicates > 0) scenario.replicates = replicates;

    const ScenarioResult result = run_scenario(scenario, threads);

    const fs::path out_dir = resolve_out_dir(out_flag);
    fs::create_directories(out_dir);
    write_generations_csv(result.runs, (out_dir / "generations.csv").string());
    write_summary_csv(result.summary, (out_dir / "summary.csv").string());

    for (const std::string& err : result.errors) {
        std::cerr << "warning: " << err << "\n";
    }
    std::cout << "scenario=" << scenario.name << " cells_x_replicates="
              << result.runs.size() << " summary_rows="
              << result.summary.size() << " failures=" << result.errors.size()
              << " out=" << out_dir.string() << "\n";
    return result.runs.empty() ? 1 : 0;
}

int cmd_inspect(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read snapshot '" + path + "'");
    std::string document((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    const Network net = deserialize(document);

    std::cout << "network: " << net.client_count() << " clients, "
              << net.server_count() << " servers, " << net.links.size()
              << " links (" << net.failed_link_count() << " down)\n";
    std::cout << "grid: " << net.grid_width << "x" << net.grid_height
              << "  min_spacing: " << fmt6(net.min_spacing)
              << "  server_capacity: " << fmt6(net.server_capacity) << "\n";
    for (const Node& n : net.nodes) {
        std::cout << "  node " << n.id << " "
                  << (n.kind == NodeKind::Client ? "client" : "server")
                  << " at (" << n.x << "," << n.y << ")";
        if (n.kind == NodeKind::Client) {
            std::cout << " traffic=" << fmt6(n.traffic);
        }
        if (!n.working) std::cout << " DOWN age=" << n.down_age;
        std::cout << "\n";
    }
    for (const Link& l : net.links) {
        std::cout << "  link " << l.id << " " << l.from << "-" << l.to << " "
                  << (l.kind == LinkKind::ClientServer ? "client-server"
                                                       : "client-client");
        if (!l.working) std::cout << " DOWN age=" << l.down_age;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "netevolve: evolves client-server network topologies with a "
        "mutation-only genetic algorithm"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_flag;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    int replicates = 0;
    int threads = 1;
    std::string experiment_name;
    std::string snapshot_path;

    CLI::App* run_cmd =
        app.add_subcommand("run", "run one evolution and write CSV/plot data");
    run_cmd->add_option("--config", config_path, "key=value config file");
    CLI::Option* run_seed =
        run_cmd->add_option("--seed", seed, "override master_seed");
    run_cmd->add_option("--out", out_flag, "output directory (default ./out)");
    run_cmd->add_option("--set", sets, "override a config key (key=value)");

    CLI::App* exp_cmd = app.add_subcommand(
        "experiment", "run a preset or scenario-file parameter sweep");
    exp_cmd->add_option("name", experiment_name, "preset name or scenario file")
        ->required();
    CLI::Option* exp_seed =
        exp_cmd->add_option("--seed", seed, "override the scenario master seed");
    exp_cmd->add_option("--replicates", replicates, "seeds per sweep cell");
    exp_cmd->add_option("--threads", threads, "worker threads (default 1)");
    exp_cmd->add_option("--out", out_flag, "output directory (default ./out)");
    exp_cmd->add_option("--set", sets, "override a base-config key (key=value)");

    CLI::App* inspect_cmd =
        app.add_subcommand("inspect", "pretty-print a network snapshot");
    inspect_cmd->add_option("snapshot", snapshot_path, "snapshot file")
        ->required();

    CLI::App* presets_cmd =
        app.add_subcommand("presets", "list built-in experiment presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (run_cmd->parsed()) {
            return cmd_run(config_path, sets, run_seed->count() > 0, seed,
                           out_flag);
        }
        if (exp_cmd->parsed()) {
            return cmd_experiment(experiment_name, sets, exp_seed->count() > 0,
                                  seed, replicates, threads, out_flag);
        }
        if (inspect_cmd->parsed()) {
            return cmd_inspect(snapshot_path);
        }
        if (presets_cmd->parsed()) {
            for (const std::string& name : preset_names()) {
                std::cout << name << "\n";
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
