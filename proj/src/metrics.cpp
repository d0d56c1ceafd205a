#include "netevolve/metrics.hpp"

#include <cmath>
#include <queue>
#include <unordered_map>
#include <vector>

namespace netevolve {

double cost(const Network& net, double cost_per_unit_length) {
    double total = 0.0;
    for (const Link& l : net.links) {
        const Node* a = net.find_node(l.from);
        const Node* b = net.find_node(l.to);
        const double dx = static_cast<double>(a->x) - static_cast<double>(b->x);
        const double dy = static_cast<double>(a->y) - static_cast<double>(b->y);
        total += std::sqrt(dx * dx + dy * dy);
    }
    return cost_per_unit_length * total;
}

double reliability(const Network& net, int n_pairs, Rng& rng) {
    const std::size_t n = net.nodes.size();
    if (n < 2) throw TooFewNodes("reliability needs at least 2 nodes");

    const std::vector<int> labels = working_component_labels(net);

    int connected = 0;
    for (int s = 0; s < n_pairs; ++s) {
        const std::size_t i = rng.next_below(n);
        std::size_t j;
        do {
            j = rng.next_below(n);
        } while (j == i);
        if (labels[i] >= 0 && labels[i] == labels[j]) ++connected;
    }
    return static_cast<double>(connected) / static_cast<double>(n_pairs);
}

namespace {

// Path existence over working nodes/links via BFS, independent of the
// union-find route used by the estimator.
bool working_path_exists(const Network& net,
                         const std::vector<std::vector<std::size_t>>& adjacency,
                         std::size_t from, std::size_t to) {
    if (!net.nodes[from].working || !net.nodes[to].working) return false;
    if (from == to) return true;
    std::vector<bool> seen(net.nodes.size(), false);
    std::queue<std::size_t> frontier;
    seen[from] = true;
    frontier.push(from);
    while (!frontier.empty()) {
        const std::size_t v = frontier.front();
        frontier.pop();
        for (const std::size_t w : adjacency[v]) {
            if (seen[w]) continue;
            if (w == to) return true;
            seen[w] = true;
            frontier.push(w);
        }
    }
    return false;
}

}  // namespace

double exact_reliability(const Network& net) {
    const std::size_t n = net.nodes.size();
    if (n > kExactReliabilityMaxNodes) {
        throw TooLarge("exact reliability is bounded at " +
                       std::to_string(kExactReliabilityMaxNodes) + " nodes");
    }
    if (n < 2) throw TooFewNodes("exact reliability needs at least 2 nodes");

    std::unordered_map<NodeId, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index.emplace(net.nodes[i].id, i);

    std::vector<std::vector<std::size_t>> adjacency(n);
    for (const Link& l : net.links) {
        if (!l.working) continue;
        const std::size_t a = index.at(l.from);
        const std::size_t b = index.at(l.to);
        if (!net.nodes[a].working || !net.nodes[b].working) continue;
        adjacency[a].push_back(b);
        adjacency[b].push_back(a);
    }

    std::size_t connected = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (working_path_exists(net, adjacency, i, j)) ++connected;
        }
    }
    const std::size_t total = n * (n - 1) / 2;
    return static_cast<double>(connected) / static_cast<double>(total);
}

double fitness(const Network& net, int n_pairs, Rng& rng,
               double cost_per_unit_length) {
    const double r = reliability(net, n_pairs, rng);
    const double p = cost(net, cost_per_unit_length);
    return p == 0.0 ? 0.0 : r / p;
}

double redundancy(const Network& net, bool include_client_client_links) {
    const std::size_t n_servers = net.server_count();
    if (n_servers == 0) throw NoServers("redundancy needs at least one server");

    // Sum of client out-degrees. A client-server link contributes at its
    // client end; with the wide flag a client-client link contributes at both.
    std::size_t total_out = 0;
    for (const Link& l : net.links) {
        if (l.kind == LinkKind::ClientServer) {
            total_out += 1;
        } else if (include_client_client_links) {
            total_out += 2;
        }
    }
    return static_cast<double>(total_out) / static_cast<double>(n_servers);
}

double pleiotropy(const Network& net) {
    const std::size_t n_clients = net.client_count();
    if (n_clients == 0) throw NoClients("pleiotropy needs at least one client");

    std::size_t total_in = 0;
    for (const Link& l : net.links) {
        if (l.kind == LinkKind::ClientServer) total_in += 1;
    }
    return static_cast<double>(total_in) / static_cast<double>(n_clients);
}

MetricsRow evaluate_metrics(const Network& net, int n_pairs, Rng& rng,
                            double cost_per_unit_length) {
    MetricsRow row;
    row.reliability = reliability(net, n_pairs, rng);
    row.cost = cost(net, cost_per_unit_length);
    row.fitness = row.cost == 0.0 ? 0.0 : row.reliability / row.cost;
    row.redundancy = redundancy(net);
    row.pleiotropy = pleiotropy(net);
    return row;
}

}  // namespace netevolve
