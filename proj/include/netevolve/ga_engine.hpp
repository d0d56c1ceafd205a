#ifndef NETEVOLVE_GA_ENGINE_HPP
#define NETEVOLVE_GA_ENGINE_HPP

#include <functional>
#include <vector>

#include "netevolve/core_model.hpp"
#include "netevolve/dynamics.hpp"
#include "netevolve/metrics.hpp"

namespace netevolve {

// Selection schemes: One reproduces the single fittest network into
// `offspring` children; Two takes the fittest pair and makes five children
// from each, for a fixed population of 10.
enum class Strategy { One, Two };

struct GaConfig {
    Strategy strategy = Strategy::One;
    int offspring = 10;  // strategy one only; strategy two is fixed at 10
    int generations = 150;
    int mutations_min = 1;  // mutations applied per offspring, drawn uniformly
    int mutations_max = 3;
    EnvParams env;
    NetworkParams network;
    MaintainParams maintain;
    // Probability that a mutation drawn while utilization sits inside the
    // band perturbs the network anyway (random link add/remove). This is the
    // plateau noise; 0 freezes converged networks completely.
    double mutation_noise_prob = 0.2;
    double cost_per_unit_length = 1.0;
    int n_pairs = 100;  // reliability sample count per evaluation
    std::uint64_t master_seed = 0;

    int population_size() const {
        return strategy == Strategy::Two ? 10 : offspring;
    }

    // Throws ConfigError on any out-of-range field.
    void check() const;
};

// Per-generation metrics of the selected parent.
struct GenerationRecord {
    int generation = 0;  // 1-based
    MetricsRow best;
    double utilization_nominal = 0.0;
    double utilization_effective = 0.0;
    int n_links = 0;
    int n_servers = 0;
    int n_failed_links = 0;
    double redundancy_pleiotropy_ratio = 0.0;  // D/L, 0 when L = 0
};

// Copies the parent and applies k mutations, k uniform in
// [mutations_min, mutations_max]. Each mutation is the utilization-band
// action; when utilization sits inside the band the mutation is a random
// link addition or removal instead, so offspring keep varying at the
// optimum. The parent is left untouched; infeasible actions are silent
// no-ops.
Network mutate_offspring(const Network& parent, const GaConfig& cfg, Rng& rng);

struct StepResult {
    std::vector<Network> population;
    GenerationRecord record;
    std::vector<std::size_t> parents;  // selected member indices
};

// One generation of strategy one: evaluate all members on rng streams derived
// from (master_seed, generation, member), select the argmax (ties to the
// lowest index), strike the selected parent with one environment step, then
// mutate `offspring` children from the struck parent. The next population is
// exactly the children, which all inherit the parent's failure state.
StepResult step_strategy_one(const std::vector<Network>& population,
                             const GaConfig& cfg, int generation);

// One generation of strategy two: the fittest two members are struck
// independently and produce five children each. Throws PopulationTooSmall
// below 2 members.
StepResult step_strategy_two(const std::vector<Network>& population,
                             const GaConfig& cfg, int generation);

using GenerationObserver = std::function<void(
    int generation, const std::vector<Network>& population,
    const GenerationRecord& record)>;

// Full run: builds the seed network, gives every initial member one mutation
// pass, then iterates the configured strategy. The whole record sequence is a
// pure function of cfg. Optionally reports the final selected network and
// calls the observer after every generation.
std::vector<GenerationRecord> run(const GaConfig& cfg,
                                  Network* final_best = nullptr,
                                  const GenerationObserver& observer = {});

}  // namespace netevolve

#endif  // NETEVOLVE_GA_ENGINE_HPP
