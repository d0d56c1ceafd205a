#include "netevolve/ga_engine.hpp"

#include <utility>

namespace netevolve {

void GaConfig::check() const {
    if (offspring < 1) throw ConfigError("offspring", "must be >= 1");
    if (generations < 1) throw ConfigError("generations", "must be >= 1");
    if (mutations_min < 0) throw ConfigError("mutations_min", "must be >= 0");
    if (mutations_max < mutations_min) {
        throw ConfigError("mutations_max", "must be >= mutations_min");
    }
    if (env.link_failure_prob < 0.0 || env.link_failure_prob > 1.0) {
        throw ConfigError("link_failure_prob", "must be in [0,1]");
    }
    if (env.node_failure_prob < 0.0 || env.node_failure_prob > 1.0) {
        throw ConfigError("node_failure_prob", "must be in [0,1]");
    }
    if (env.repair_time < 1) throw ConfigError("repair_time", "must be >= 1");
    if (network.n_clients < 1) throw ConfigError("n_clients", "must be >= 1");
    if (network.n_servers < 1) throw ConfigError("n_servers", "must be >= 1");
    if (network.grid_width < 1) throw ConfigError("grid_width", "must be >= 1");
    if (network.grid_height < 1) {
        throw ConfigError("grid_height", "must be >= 1");
    }
    if (network.min_spacing <= 0.0) {
        throw ConfigError("min_spacing", "must be > 0");
    }
    if (network.t_max <= 0.0) throw ConfigError("t_max", "must be > 0");
    if (network.auto_capacity) {
        if (network.target_utilization <= 0.0 ||
            network.target_utilization > 1.0) {
            throw ConfigError("target_utilization", "must be in (0,1]");
        }
    } else if (network.server_capacity <= 0.0) {
        throw ConfigError("server_capacity", "must be > 0");
    }
    if (network.default_link_failure_rate < 0.0 ||
        network.default_link_failure_rate > 1.0) {
        throw ConfigError("default_link_failure_rate", "must be in [0,1]");
    }
    if (maintain.low < 0.0 || maintain.high < maintain.low) {
        throw ConfigError("maintain_band", "requires 0 <= low <= high");
    }
    if (maintain.server_prob < 0.0 || maintain.server_prob > 1.0) {
        throw ConfigError("server_add_prob", "must be in [0,1]");
    }
    if (mutation_noise_prob < 0.0 || mutation_noise_prob > 1.0) {
        throw ConfigError("mutation_noise_prob", "must be in [0,1]");
    }
    if (cost_per_unit_length <= 0.0) {
        throw ConfigError("cost_per_unit_length", "must be > 0");
    }
    if (n_pairs < 1) throw ConfigError("n_pairs", "must be >= 1");
}

Network mutate_offspring(const Network& parent, const GaConfig& cfg,
                         Rng& rng) {
    Network child = parent;
    const int k = rng.next_int(cfg.mutations_min, cfg.mutations_max);
    for (int m = 0; m < k; ++m) {
        const MaintenanceReport report = maintain(child, rng, cfg.maintain);
        if (report.action == MaintainAction::None &&
            rng.bernoulli(cfg.mutation_noise_prob)) {
            // Inside the band the maintenance rules prescribe nothing, but
            // offspring still have to vary: perturb with a random link
            // addition or removal so the plateau carries mutation noise for
            // selection to act on.
            if (rng.bernoulli(0.35)) {
                try {
                    add_random_link(child, rng);
                } catch (const Saturated&) {
                }
            } else {
                try {
                    remove_random_link(child, rng);
                } catch (const NoLinks&) {
                }
            }
        }
    }
    return child;
}

namespace {

// The record re-evaluates the selected parent on its own stream: the
// selection-time estimate is an argmax over noisy estimates and would bias
// the reported reliability upward.
GenerationRecord make_record(const Network& best, const GaConfig& cfg,
                             int generation) {
    Rng rng(derive_seed(cfg.master_seed, streams::record,
                        static_cast<std::uint64_t>(generation)));
    const MetricsRow metrics =
        evaluate_metrics(best, cfg.n_pairs, rng, cfg.cost_per_unit_length);

    GenerationRecord rec;
    rec.generation = generation;
    rec.best = metrics;
    rec.utilization_nominal = utilization(best, UtilizationMode::Nominal);
    rec.utilization_effective = utilization(best, UtilizationMode::Effective);
    rec.n_links = static_cast<int>(best.links.size());
    rec.n_servers = static_cast<int>(best.server_count());
    rec.n_failed_links = static_cast<int>(best.failed_link_count());
    rec.redundancy_pleiotropy_ratio =
        metrics.pleiotropy == 0.0 ? 0.0
                                  : metrics.redundancy / metrics.pleiotropy;
    return rec;
}

// Evaluates every member on its own derived stream, so results do not depend
// on evaluation order and members could be scored concurrently.
std::vector<MetricsRow> evaluate_population(
    const std::vector<Network>& population, const GaConfig& cfg,
    int generation) {
    std::vector<MetricsRow> rows(population.size());
    for (std::size_t m = 0; m < population.size(); ++m) {
        Rng rng(derive_seed(cfg.master_seed, streams::eval,
                            static_cast<std::uint64_t>(generation), m));
        rows[m] =
            evaluate_metrics(population[m], cfg.n_pairs, rng,
                             cfg.cost_per_unit_length);
    }
    return rows;
}

// The environment strikes the reproducing network once per generation, and
// every offspring inherits that failure state before mutating in response.
// Striking each child independently instead would let selection discard any
// child that drew a failure, so failures would never survive into the
// lineage and the repair process would be irrelevant.
Network struck_parent(const Network& parent, const GaConfig& cfg,
                      int generation, std::size_t parent_slot) {
    Network damaged = parent;
    Rng env_rng(derive_seed(cfg.master_seed, streams::env,
                            static_cast<std::uint64_t>(generation),
                            parent_slot));
    environment_step(damaged, cfg.env, env_rng);
    return damaged;
}

Network make_child(const Network& parent, const GaConfig& cfg, int generation,
                   std::size_t child_index) {
    Rng mutate_rng(derive_seed(cfg.master_seed, streams::mutate,
                               static_cast<std::uint64_t>(generation),
                               child_index));
    return mutate_offspring(parent, cfg, mutate_rng);
}

}  // namespace

StepResult step_strategy_one(const std::vector<Network>& population,
                             const GaConfig& cfg, int generation) {
    const std::vector<MetricsRow> scores =
        evaluate_population(population, cfg, generation);

    std::size_t best = 0;
    for (std::size_t m = 1; m < population.size(); ++m) {
        if (scores[m].fitness > scores[best].fitness) best = m;
    }

    StepResult result;
    result.parents = {best};
    result.record = make_record(population[best], cfg, generation);
    const Network damaged = struck_parent(population[best], cfg, generation, 0);
    result.population.reserve(static_cast<std::size_t>(cfg.offspring));
    for (int c = 0; c < cfg.offspring; ++c) {
        result.population.push_back(
            make_child(damaged, cfg, generation, static_cast<std::size_t>(c)));
    }
    return result;
}

StepResult step_strategy_two(const std::vector<Network>& population,
                             const GaConfig& cfg, int generation) {
    if (population.size() < 2) {
        throw PopulationTooSmall("strategy two needs at least 2 members");
    }
    const std::vector<MetricsRow> scores =
        evaluate_population(population, cfg, generation);

    // Fittest two distinct indices, ties broken toward the lower index.
    std::size_t first = 0;
    std::size_t second = 1;
    if (scores[1].fitness > scores[0].fitness) {
        first = 1;
        second = 0;
    }
    for (std::size_t m = 2; m < population.size(); ++m) {
        if (scores[m].fitness > scores[first].fitness) {
            second = first;
            first = m;
        } else if (scores[m].fitness > scores[second].fitness) {
            second = m;
        }
    }
    if (first > second) std::swap(first, second);

    StepResult result;
    result.parents = {first, second};
    result.record = make_record(population[first], cfg, generation);
    const Network damaged_first =
        struck_parent(population[first], cfg, generation, 0);
    const Network damaged_second =
        struck_parent(population[second], cfg, generation, 1);
    result.population.reserve(10);
    for (int c = 0; c < 10; ++c) {
        const Network& parent = c < 5 ? damaged_first : damaged_second;
        result.population.push_back(
            make_child(parent, cfg, generation, static_cast<std::size_t>(c)));
    }
    return result;
}

std::vector<GenerationRecord> run(const GaConfig& cfg, Network* final_best,
                                  const GenerationObserver& observer) {
    cfg.check();

    // Links record the failure rate they are built under, so snapshots stay
    // self-describing.
    NetworkParams net_params = cfg.network;
    net_params.default_link_failure_rate = cfg.env.link_failure_prob;
    const Network seed_net =
        new_network(net_params, derive_seed(cfg.master_seed, streams::network));

    std::vector<Network> population;
    population.reserve(static_cast<std::size_t>(cfg.population_size()));
    for (int m = 0; m < cfg.population_size(); ++m) {
        Rng rng(derive_seed(cfg.master_seed, streams::init, 0,
                            static_cast<std::uint64_t>(m)));
        population.push_back(mutate_offspring(seed_net, cfg, rng));
    }

    std::vector<GenerationRecord> records;
    records.reserve(static_cast<std::size_t>(cfg.generations));
    for (int gen = 1; gen <= cfg.generations; ++gen) {
        StepResult step = cfg.strategy == Strategy::One
                              ? step_strategy_one(population, cfg, gen)
                              : step_strategy_two(population, cfg, gen);
        if (final_best != nullptr) {
            *final_best = population[step.parents.front()];
        }
        records.push_back(step.record);
        population = std::move(step.population);
        if (observer) observer(gen, population, records.back());
    }
    return records;
}

}  // namespace netevolve
