#include "netevolve/dynamics.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace netevolve {

double utilization(const Network& net, UtilizationMode mode) {
    const std::size_t n_servers = net.server_count();
    if (n_servers == 0) throw NoServers("utilization needs at least one server");

    const double capacity =
        static_cast<double>(n_servers) * net.server_capacity;

    if (mode == UtilizationMode::Nominal) {
        double total = 0.0;
        for (const Node& n : net.nodes) {
            if (n.kind == NodeKind::Client) total += n.traffic;
        }
        return total / capacity;
    }

    // Effective: only clients with a working path to a working server.
    const std::vector<int> labels = working_component_labels(net);
    std::vector<bool> served_component;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        if (net.nodes[i].kind == NodeKind::Server && labels[i] >= 0) {
            if (served_component.size() <= static_cast<std::size_t>(labels[i])) {
                served_component.resize(labels[i] + 1, false);
            }
            served_component[labels[i]] = true;
        }
    }
    double total = 0.0;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        const Node& n = net.nodes[i];
        if (n.kind != NodeKind::Client || labels[i] < 0) continue;
        if (static_cast<std::size_t>(labels[i]) < served_component.size() &&
            served_component[labels[i]]) {
            total += n.traffic;
        }
    }
    return total / capacity;
}

LinkId add_random_link(Network& net, Rng& rng) {
    // Enumerate legal unordered pairs in node order so the uniform choice is
    // reproducible for a given rng state.
    std::vector<std::pair<std::size_t, std::size_t>> legal;
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < net.nodes.size(); ++j) {
            const Node& a = net.nodes[i];
            const Node& b = net.nodes[j];
            if (a.kind == NodeKind::Server && b.kind == NodeKind::Server) {
                continue;
            }
            if (net.has_link_between(a.id, b.id)) continue;
            legal.emplace_back(i, j);
        }
    }
    if (legal.empty()) throw Saturated("no legal node pair left to link");

    const auto [i, j] = legal[rng.next_below(legal.size())];
    const Node& a = net.nodes[i];
    const Node& b = net.nodes[j];

    Link l;
    l.id = net.next_link_id++;
    l.failure_rate = net.default_link_failure_rate;
    if (a.kind != b.kind) {
        l.kind = LinkKind::ClientServer;
        l.from = a.kind == NodeKind::Client ? a.id : b.id;
        l.to = a.kind == NodeKind::Server ? a.id : b.id;
    } else {
        l.kind = LinkKind::ClientClient;
        l.from = std::min(a.id, b.id);
        l.to = std::max(a.id, b.id);
    }
    net.links.push_back(l);
    return l.id;
}

LinkId remove_random_link(Network& net, Rng& rng) {
    if (net.links.empty()) throw NoLinks("network has no links to remove");
    const std::size_t idx = rng.next_below(net.links.size());
    const LinkId id = net.links[idx].id;
    net.links.erase(net.links.begin() + static_cast<std::ptrdiff_t>(idx));
    return id;
}

NodeId add_server(Network& net, Rng& rng) {
    // Same bounded rejection sampling as initial placement.
    int x = 0;
    int y = 0;
    bool placed = false;
    for (int attempt = 0; attempt < kPlacementAttemptsPerNode && !placed;
         ++attempt) {
        x = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(net.grid_width)));
        y = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(net.grid_height)));
        placed = true;
        for (const Node& n : net.nodes) {
            const double dx = static_cast<double>(x - n.x);
            const double dy = static_cast<double>(y - n.y);
            if (dx * dx + dy * dy < net.min_spacing * net.min_spacing) {
                placed = false;
                break;
            }
        }
    }
    if (!placed) {
        throw PlacementInfeasible("no room for another server at min_spacing");
    }

    Node n;
    n.id = net.next_node_id++;
    n.kind = NodeKind::Server;
    n.x = x;
    n.y = y;
    net.nodes.push_back(n);
    return n.id;
}

FailureReport environment_step(Network& net, const EnvParams& env, Rng& rng) {
    FailureReport report;

    // Entities working at entry are the only candidates for fresh failure.
    std::vector<bool> link_was_working(net.links.size());
    for (std::size_t i = 0; i < net.links.size(); ++i) {
        link_was_working[i] = net.links[i].working;
    }
    std::vector<bool> node_was_working(net.nodes.size());
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        node_was_working[i] = net.nodes[i].working;
    }

    // Phase 1: age failed entities and repair those reaching repair_time.
    for (std::size_t i = 0; i < net.links.size(); ++i) {
        Link& l = net.links[i];
        if (link_was_working[i]) continue;
        if (++l.down_age >= env.repair_time) {
            l.working = true;
            l.down_age = 0;
            ++report.links_repaired;
        }
    }
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        Node& n = net.nodes[i];
        if (node_was_working[i]) continue;
        if (++n.down_age >= env.repair_time) {
            n.working = true;
            n.down_age = 0;
            ++report.nodes_repaired;
        }
    }

    // Phase 2: fresh failures, links first then nodes, in storage order.
    for (std::size_t i = 0; i < net.links.size(); ++i) {
        if (!link_was_working[i]) continue;
        if (rng.bernoulli(env.link_failure_prob)) {
            net.links[i].working = false;
            net.links[i].down_age = 0;
            ++report.links_failed;
        }
    }
    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        if (!node_was_working[i]) continue;
        if (rng.bernoulli(env.node_failure_prob)) {
            net.nodes[i].working = false;
            net.nodes[i].down_age = 0;
            ++report.nodes_failed;
        }
    }
    return report;
}

MaintenanceReport maintain(Network& net, Rng& rng,
                           const MaintainParams& params) {
    MaintenanceReport report;
    report.utilization = utilization(net, UtilizationMode::Effective);

    if (report.utilization < params.low) {
        report.action = MaintainAction::AddLink;
        try {
            report.entity_id = add_random_link(net, rng);
            report.acted = true;
        } catch (const Saturated&) {
        }
    } else if (report.utilization > params.high) {
        if (rng.bernoulli(params.server_prob)) {
            report.action = MaintainAction::AddServer;
            try {
                report.entity_id = add_server(net, rng);
                report.acted = true;
            } catch (const PlacementInfeasible&) {
            }
        } else {
            report.action = MaintainAction::RemoveLink;
            try {
                report.entity_id = remove_random_link(net, rng);
                report.acted = true;
            } catch (const NoLinks&) {
            }
        }
    }
    return report;
}

}  // namespace netevolve
