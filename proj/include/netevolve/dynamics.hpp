#ifndef NETEVOLVE_DYNAMICS_HPP
#define NETEVOLVE_DYNAMICS_HPP

#include "netevolve/core_model.hpp"
#include "netevolve/rng.hpp"

namespace netevolve {

// Nominal is the pure capacity ratio: total requested traffic over total
// server capacity, independent of the link set. Effective counts only the
// traffic of clients that currently reach a working server over working
// nodes and links, so link changes and failures move it.
enum class UtilizationMode { Nominal, Effective };

struct EnvParams {
    double link_failure_prob = 0.01;  // per working link per generation
    double node_failure_prob = 0.0;   // per working node per generation
    int repair_time = 2;              // generations until a failed entity returns
};

struct FailureReport {
    int links_failed = 0;
    int links_repaired = 0;
    int nodes_failed = 0;
    int nodes_repaired = 0;
};

enum class MaintainAction { None, AddLink, RemoveLink, AddServer };

struct MaintainParams {
    double low = 0.75;         // below: add a link
    double high = 0.85;        // above: shed load
    double server_prob = 0.2;  // above high: add a server with this probability
};

struct MaintenanceReport {
    MaintainAction action = MaintainAction::None;
    bool acted = false;  // false when the chosen action was infeasible
    double utilization = 0.0;
    std::uint64_t entity_id = 0;  // id of the added/removed entity when acted
};

// Utilization ratio; throws NoServers when the server set is empty.
double utilization(const Network& net, UtilizationMode mode);

// Adds one working link between a uniformly chosen legal pair (no duplicate,
// no server-server). Throws Saturated when no legal pair remains.
LinkId add_random_link(Network& net, Rng& rng);

// Removes one uniformly chosen link, working or failed. Throws NoLinks.
LinkId remove_random_link(Network& net, Rng& rng);

// Adds one working server at a random legal position.
// Throws PlacementInfeasible when the grid has no room at min_spacing.
NodeId add_server(Network& net, Rng& rng);

// One environmental step: failed entities age and repair deterministically
// at repair_time, then entities that were working at entry fail
// independently. A repair can therefore not be undone in the same step.
FailureReport environment_step(Network& net, const EnvParams& env, Rng& rng);

// One utilization-band action based on effective utilization: below the band
// add a link; above it add a server (probability server_prob) or remove a
// link. Infeasible actions are recorded as no-ops, never thrown.
MaintenanceReport maintain(Network& net, Rng& rng,
                           const MaintainParams& params = {});

}  // namespace netevolve

#endif  // NETEVOLVE_DYNAMICS_HPP
