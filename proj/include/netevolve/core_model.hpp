#ifndef NETEVOLVE_CORE_MODEL_HPP
#define NETEVOLVE_CORE_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "netevolve/errors.hpp"
#include "netevolve/rng.hpp"

namespace netevolve {

using NodeId = std::uint64_t;
using LinkId = std::uint64_t;

enum class NodeKind { Client, Server };

enum class LinkKind { ClientClient, ClientServer };

// A node is a client (which may also route traffic) or a server. Clients
// carry a requested-traffic value; servers share the network-wide capacity.
struct Node {
    NodeId id = 0;
    NodeKind kind = NodeKind::Client;
    int x = 0;
    int y = 0;
    double traffic = 0.0;       // clients only; unused for servers
    double failure_rate = 0.0;  // probability of failure per generation
    bool working = true;
    int down_age = 0;  // generations since failure, 0 while working

    bool operator==(const Node&) const = default;
};

// Undirected edge. For client-server links `from` is always the client end
// and `to` the server end; client-client links store endpoints in ascending
// id order. That orientation is what the degree metrics read.
struct Link {
    LinkId id = 0;
    NodeId from = 0;
    NodeId to = 0;
    LinkKind kind = LinkKind::ClientClient;
    double failure_rate = 0.0;
    bool working = true;
    int down_age = 0;

    bool operator==(const Link&) const = default;
};

// The genome: node set, link set and placement geometry. Plain value type;
// copies are independent and a const Network is safe to share across threads.
struct Network {
    std::vector<Node> nodes;
    std::vector<Link> links;
    double server_capacity = 50.0;  // per-server capacity, identical for all
    int grid_width = 100;
    int grid_height = 100;
    double min_spacing = 3.0;
    double default_link_failure_rate = 0.0;  // applied to newly added links
    NodeId next_node_id = 0;
    LinkId next_link_id = 0;

    bool operator==(const Network&) const = default;

    std::size_t client_count() const;
    std::size_t server_count() const;
    std::size_t failed_link_count() const;

    const Node* find_node(NodeId id) const;
    Node* find_node(NodeId id);

    // True if some link (working or failed) joins the unordered pair {a, b}.
    bool has_link_between(NodeId a, NodeId b) const;

    // Index of a node id within `nodes`, or npos.
    std::size_t node_index(NodeId id) const;
};

struct NetworkParams {
    int n_clients = 20;
    int n_servers = 3;
    int grid_width = 100;
    int grid_height = 100;
    double min_spacing = 3.0;
    double t_max = 10.0;            // client traffic drawn from (0, t_max)
    double server_capacity = 50.0;  // T_s, used when auto_capacity is off
    // By default the per-server capacity is derived from the drawn client
    // traffic so that nominal utilization starts at target_utilization,
    // inside the maintenance band. A fixed capacity scale would leave the
    // band unreachable (or permanently exceeded) depending on the traffic
    // draw, and the construction/maintenance dynamics would degenerate.
    bool auto_capacity = true;
    double target_utilization = 0.8;
    double default_link_failure_rate = 0.0;
};

// Builds a link-free network with randomly placed nodes. Placement is
// rejection-sampled against min_spacing with a bounded retry budget per node;
// identical params + seed give a bit-identical network.
Network new_network(const NetworkParams& params, std::uint64_t seed);

inline constexpr int kPlacementAttemptsPerNode = 10000;

// Checks every model invariant, throwing InvariantViolation on the first
// failure. Used by deserialize and by the test-side invariant sweeps.
void validate(const Network& net);

// Snapshot round-trip. The document is versioned JSON with self-describing
// keys; deserialize revalidates every invariant on load.
std::string serialize(const Network& net);
Network deserialize(const std::string& document);

// Connected-component label per node index over the working subgraph
// (working nodes joined by working links). Failed nodes get label -1.
std::vector<int> working_component_labels(const Network& net);

}  // namespace netevolve

#endif  // NETEVOLVE_CORE_MODEL_HPP
