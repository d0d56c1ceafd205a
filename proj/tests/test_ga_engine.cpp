#include <doctest.h>

#include "netevolve/experiments.hpp"
#include "netevolve/ga_engine.hpp"
#include "test_util.hpp"

using namespace netevolve;
using doctest::Approx;
using test_util::client;
using test_util::connect;
using test_util::make_net;
using test_util::server;

namespace {

bool records_equal(const GenerationRecord& a, const GenerationRecord& b) {
    return a.generation == b.generation && a.best.fitness == b.best.fitness &&
           a.best.reliability == b.best.reliability &&
           a.best.cost == b.best.cost &&
           a.best.redundancy == b.best.redundancy &&
           a.best.pleiotropy == b.best.pleiotropy &&
           a.utilization_nominal == b.utilization_nominal &&
           a.utilization_effective == b.utilization_effective &&
           a.n_links == b.n_links && a.n_servers == b.n_servers &&
           a.n_failed_links == b.n_failed_links &&
           a.redundancy_pleiotropy_ratio == b.redundancy_pleiotropy_ratio;
}

// A fully-linked all-working network: every member evaluates to exactly the
// same fitness (reliability is exactly 1), which makes ties observable.
Network complete_network() {
    Network net = make_net({client(0, 0, 0, 1.0), client(1, 10, 0, 1.0),
                            server(2, 50, 50)});
    connect(net, 0, 1);
    connect(net, 0, 2);
    connect(net, 1, 2);
    return net;
}

}  // namespace

TEST_CASE("mutate_offspring with zero mutations copies the parent") {
    GaConfig cfg;
    cfg.mutations_min = 0;
    cfg.mutations_max = 0;
    const Network parent = new_network(cfg.network, 1);
    Rng rng(5);
    const Network child = mutate_offspring(parent, cfg, rng);
    CHECK(child == parent);
}

TEST_CASE("mutations on a dead network always add links") {
    GaConfig cfg;
    cfg.mutations_min = 2;
    cfg.mutations_max = 2;
    const Network parent = new_network(cfg.network, 1);  // no links: U_eff 0
    Rng rng(5);
    const Network child = mutate_offspring(parent, cfg, rng);
    CHECK(child.links.size() == 2);
    CHECK(parent.links.empty());  // parent untouched
}

TEST_CASE("mutate_offspring is deterministic in the rng seed") {
    GaConfig cfg;
    const Network parent = new_network(cfg.network, 1);
    Rng ra(9);
    Rng rb(9);
    CHECK(mutate_offspring(parent, cfg, ra) ==
          mutate_offspring(parent, cfg, rb));
}

TEST_CASE("strategy one keeps the population at the offspring count") {
    GaConfig cfg;
    cfg.offspring = 10;
    cfg.master_seed = 3;
    std::vector<Network> population(4, new_network(cfg.network, 2));
    const StepResult step = step_strategy_one(population, cfg, 1);
    CHECK(step.population.size() == 10);
    for (const Network& net : step.population) CHECK_NOTHROW(validate(net));
    CHECK(step.record.generation == 1);
}

TEST_CASE("strategy one breaks fitness ties toward member zero") {
    GaConfig cfg;
    cfg.offspring = 3;
    std::vector<Network> population(3, complete_network());
    const StepResult step = step_strategy_one(population, cfg, 1);
    REQUIRE(step.parents.size() == 1);
    CHECK(step.parents[0] == 0);
    CHECK(step.record.best.reliability == Approx(1.0));
}

TEST_CASE("strategy one with one offspring and a calm world is a fixed point") {
    GaConfig cfg;
    cfg.offspring = 1;
    cfg.mutations_min = 0;
    cfg.mutations_max = 0;
    cfg.env.link_failure_prob = 0.0;
    cfg.env.node_failure_prob = 0.0;
    std::vector<Network> population = {complete_network()};
    const StepResult step = step_strategy_one(population, cfg, 1);
    REQUIRE(step.population.size() == 1);
    CHECK(step.population[0] == population[0]);
}

TEST_CASE("strategy two produces ten children from the top two") {
    GaConfig cfg;
    cfg.strategy = Strategy::Two;
    cfg.master_seed = 11;
    std::vector<Network> population(4, complete_network());
    const StepResult step = step_strategy_two(population, cfg, 1);
    CHECK(step.population.size() == 10);
    REQUIRE(step.parents.size() == 2);
    CHECK(step.parents[0] == 0);  // tie-break: lowest indices
    CHECK(step.parents[1] == 1);
}

TEST_CASE("strategy two rejects tiny populations") {
    GaConfig cfg;
    cfg.strategy = Strategy::Two;
    std::vector<Network> population = {complete_network()};
    CHECK_THROWS_AS(step_strategy_two(population, cfg, 1),
                    PopulationTooSmall);
}

TEST_CASE("run emits one record per generation, deterministically") {
    GaConfig cfg;
    cfg.generations = 40;
    cfg.network.n_clients = 8;
    cfg.network.n_servers = 2;
    cfg.master_seed = 77;

    const auto a = run(cfg);
    REQUIRE(a.size() == 40);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].generation == static_cast<int>(i) + 1);
    }

    const auto b = run(cfg);
    REQUIRE(b.size() == a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(records_equal(a[i], b[i]));
    }

    cfg.master_seed = 78;
    const auto c = run(cfg);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!records_equal(a[i], c[i])) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("a calm world with zero mutations never loses fitness") {
    GaConfig cfg;
    cfg.generations = 20;
    cfg.mutations_min = 0;
    cfg.mutations_max = 0;
    cfg.env.link_failure_prob = 0.0;
    cfg.master_seed = 5;
    const auto records = run(cfg);
    for (std::size_t i = 1; i < records.size(); ++i) {
        CHECK(records[i].best.fitness >= records[i - 1].best.fitness);
    }
}

TEST_CASE("every network in every generation satisfies the invariants") {
    GaConfig cfg;
    cfg.generations = 25;
    cfg.network.n_clients = 10;
    cfg.network.n_servers = 2;
    cfg.env.link_failure_prob = 0.05;
    cfg.env.repair_time = 3;
    cfg.master_seed = 13;

    int observed = 0;
    run(cfg, nullptr, [&](int, const std::vector<Network>& population,
                          const GenerationRecord& rec) {
        ++observed;
        CHECK(rec.n_links >= 0);
        for (const Network& net : population) validate(net);
    });
    CHECK(observed == 25);
}

TEST_CASE("run reports the final selected network consistently") {
    GaConfig cfg;
    cfg.generations = 15;
    cfg.network.n_clients = 6;
    cfg.network.n_servers = 2;
    cfg.master_seed = 21;

    Network final_best;
    const auto records = run(cfg, &final_best);
    CHECK(static_cast<int>(final_best.links.size()) == records.back().n_links);
    CHECK(static_cast<int>(final_best.server_count()) ==
          records.back().n_servers);
    CHECK(static_cast<int>(final_best.failed_link_count()) ==
          records.back().n_failed_links);
    CHECK_NOTHROW(validate(final_best));
}

TEST_CASE("default run settles above 0.9 windowed reliability") {
    GaConfig cfg;  // strategy one, failure 0.01, repair 2
    cfg.master_seed = 1;
    const auto records = run(cfg);
    const WindowStats stats = summarize(records, 50, 150);
    CHECK(stats.mean_reliability >= 0.9);
}

TEST_CASE("config validation rejects out-of-range fields") {
    GaConfig cfg;
    SUBCASE("repair_time") {
        cfg.env.repair_time = 0;
        CHECK_THROWS_AS(cfg.check(), ConfigError);
    }
    SUBCASE("offspring") {
        cfg.offspring = 0;
        CHECK_THROWS_AS(cfg.check(), ConfigError);
    }
    SUBCASE("mutation range") {
        cfg.mutations_min = 3;
        cfg.mutations_max = 1;
        CHECK_THROWS_AS(cfg.check(), ConfigError);
    }
    SUBCASE("probability range") {
        cfg.env.link_failure_prob = 1.5;
        CHECK_THROWS_AS(cfg.check(), ConfigError);
    }
}
