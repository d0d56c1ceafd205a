#ifndef NETEVOLVE_TEST_UTIL_HPP
#define NETEVOLVE_TEST_UTIL_HPP

#include <algorithm>
#include <vector>

#include "netevolve/core_model.hpp"
#include "netevolve/dynamics.hpp"
#include "netevolve/rng.hpp"

namespace test_util {

using namespace netevolve;

inline Node client(NodeId id, int x, int y, double traffic = 1.0) {
    Node n;
    n.id = id;
    n.kind = NodeKind::Client;
    n.x = x;
    n.y = y;
    n.traffic = traffic;
    return n;
}

inline Node server(NodeId id, int x, int y) {
    Node n;
    n.id = id;
    n.kind = NodeKind::Server;
    n.x = x;
    n.y = y;
    return n;
}

inline Network make_net(std::vector<Node> nodes, double server_capacity = 50.0,
                        int grid_width = 100, int grid_height = 100) {
    Network net;
    net.nodes = std::move(nodes);
    net.server_capacity = server_capacity;
    net.grid_width = grid_width;
    net.grid_height = grid_height;
    for (const Node& n : net.nodes) {
        net.next_node_id = std::max(net.next_node_id, n.id + 1);
    }
    return net;
}

// Adds a link between a and b, deducing kind and orientation.
inline LinkId connect(Network& net, NodeId a, NodeId b, bool working = true,
                      int down_age = 0) {
    const Node* na = net.find_node(a);
    const Node* nb = net.find_node(b);
    Link l;
    l.id = net.next_link_id++;
    if (na->kind != nb->kind) {
        l.kind = LinkKind::ClientServer;
        l.from = na->kind == NodeKind::Client ? a : b;
        l.to = na->kind == NodeKind::Client ? b : a;
    } else {
        l.kind = LinkKind::ClientClient;
        l.from = std::min(a, b);
        l.to = std::max(a, b);
    }
    l.working = working;
    l.down_age = down_age;
    net.links.push_back(l);
    return l.id;
}

// Random valid network for property tests: random sizes, random link set,
// optionally random failure states.
inline Network random_network(Rng& rng, int max_nodes = 10,
                              bool with_failures = true) {
    const int n_servers = 1 + static_cast<int>(rng.next_below(3));
    const int min_clients = std::max(1, 2 - n_servers);
    const int max_clients = std::max(min_clients, max_nodes - n_servers);
    const int n_clients =
        min_clients +
        static_cast<int>(rng.next_below(max_clients - min_clients + 1));

    NetworkParams params;
    params.n_clients = n_clients;
    params.n_servers = n_servers;
    params.t_max = 10.0;
    params.server_capacity = 50.0;
    Network net = new_network(params, rng.next_u64());

    const int max_links =
        static_cast<int>(net.nodes.size() * (net.nodes.size() - 1) / 2);
    const int want = static_cast<int>(rng.next_below(max_links + 1));
    for (int i = 0; i < want; ++i) {
        try {
            add_random_link(net, rng);
        } catch (const Saturated&) {
            break;
        }
    }

    if (with_failures) {
        for (Link& l : net.links) {
            if (rng.bernoulli(0.3)) {
                l.working = false;
                l.down_age = static_cast<int>(rng.next_below(5));
            }
        }
        for (Node& n : net.nodes) {
            if (rng.bernoulli(0.15)) {
                n.working = false;
                n.down_age = static_cast<int>(rng.next_below(5));
            }
        }
    }
    return net;
}

}  // namespace test_util

#endif  // NETEVOLVE_TEST_UTIL_HPP
