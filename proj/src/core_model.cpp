#include "netevolve/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace netevolve {

using ordered_json = nlohmann::ordered_json;

std::size_t Network::client_count() const {
    return static_cast<std::size_t>(std::count_if(
        nodes.begin(), nodes.end(),
        [](const Node& n) { return n.kind == NodeKind::Client; }));
}

std::size_t Network::server_count() const {
    return nodes.size() - client_count();
}

std::size_t Network::failed_link_count() const {
    return static_cast<std::size_t>(std::count_if(
        links.begin(), links.end(), [](const Link& l) { return !l.working; }));
}

const Node* Network::find_node(NodeId id) const {
    for (const Node& n : nodes) {
        if (n.id == id) return &n;
    }
    return nullptr;
}

Node* Network::find_node(NodeId id) {
    return const_cast<Node*>(std::as_const(*this).find_node(id));
}

bool Network::has_link_between(NodeId a, NodeId b) const {
    for (const Link& l : links) {
        if ((l.from == a && l.to == b) || (l.from == b && l.to == a)) {
            return true;
        }
    }
    return false;
}

std::size_t Network::node_index(NodeId id) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].id == id) return i;
    }
    return static_cast<std::size_t>(-1);
}

namespace {

double distance(int x0, int y0, int x1, int y1) {
    const double dx = static_cast<double>(x0) - static_cast<double>(x1);
    const double dy = static_cast<double>(y0) - static_cast<double>(y1);
    return std::sqrt(dx * dx + dy * dy);
}

double node_distance(const Node& a, const Node& b) {
    return distance(a.x, a.y, b.x, b.y);
}

// Samples a grid position at least min_spacing away from every existing node.
std::pair<int, int> place_node(const Network& net, Rng& rng) {
    for (int attempt = 0; attempt < kPlacementAttemptsPerNode; ++attempt) {
        const int x = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(net.grid_width)));
        const int y = static_cast<int>(
            rng.next_below(static_cast<std::uint64_t>(net.grid_height)));
        bool ok = true;
        for (const Node& n : net.nodes) {
            if (distance(x, y, n.x, n.y) < net.min_spacing) {
                ok = false;
                break;
            }
        }
        if (ok) return {x, y};
    }
    throw PlacementInfeasible(
        "no position at min_spacing " + std::to_string(net.min_spacing) +
        " found after " + std::to_string(kPlacementAttemptsPerNode) +
        " attempts");
}

}  // namespace

Network new_network(const NetworkParams& params, std::uint64_t seed) {
    if (params.n_clients < 1) throw ConfigError("n_clients", "must be >= 1");
    if (params.n_servers < 1) throw ConfigError("n_servers", "must be >= 1");
    if (params.grid_width < 1 || params.grid_height < 1) {
        throw ConfigError("grid", "dimensions must be >= 1");
    }
    if (params.min_spacing <= 0.0) {
        throw ConfigError("min_spacing", "must be > 0");
    }
    if (params.t_max <= 0.0) throw ConfigError("t_max", "must be > 0");
    if (params.auto_capacity) {
        if (params.target_utilization <= 0.0 ||
            params.target_utilization > 1.0) {
            throw ConfigError("target_utilization", "must be in (0,1]");
        }
    } else if (params.server_capacity <= 0.0) {
        throw ConfigError("server_capacity", "must be > 0");
    }
    if (params.default_link_failure_rate < 0.0 ||
        params.default_link_failure_rate > 1.0) {
        throw ConfigError("default_link_failure_rate", "must be in [0,1]");
    }

    Network net;
    net.server_capacity = params.server_capacity;
    net.grid_width = params.grid_width;
    net.grid_height = params.grid_height;
    net.min_spacing = params.min_spacing;
    net.default_link_failure_rate = params.default_link_failure_rate;

    Rng rng(seed);
    for (int i = 0; i < params.n_clients; ++i) {
        auto [x, y] = place_node(net, rng);
        Node n;
        n.id = net.next_node_id++;
        n.kind = NodeKind::Client;
        n.x = x;
        n.y = y;
        // traffic is drawn from the open interval (0, t_max)
        do {
            n.traffic = rng.next_real(0.0, params.t_max);
        } while (n.traffic == 0.0);
        net.nodes.push_back(n);
    }
    for (int i = 0; i < params.n_servers; ++i) {
        auto [x, y] = place_node(net, rng);
        Node n;
        n.id = net.next_node_id++;
        n.kind = NodeKind::Server;
        n.x = x;
        n.y = y;
        net.nodes.push_back(n);
    }

    if (params.auto_capacity) {
        double total_traffic = 0.0;
        for (const Node& n : net.nodes) total_traffic += n.traffic;
        net.server_capacity =
            total_traffic /
            (static_cast<double>(params.n_servers) * params.target_utilization);
    }
    return net;
}

void validate(const Network& net) {
    if (net.grid_width < 1 || net.grid_height < 1) {
        throw InvariantViolation("grid dimensions must be positive");
    }
    if (net.min_spacing <= 0.0) {
        throw InvariantViolation("min_spacing must be positive");
    }
    if (net.server_capacity <= 0.0) {
        throw InvariantViolation("server_capacity must be positive");
    }
    if (net.default_link_failure_rate < 0.0 ||
        net.default_link_failure_rate > 1.0) {
        throw InvariantViolation("default_link_failure_rate outside [0,1]");
    }
    if (net.client_count() == 0) {
        throw InvariantViolation("network has no clients");
    }
    if (net.server_count() == 0) {
        throw InvariantViolation("network has no servers");
    }

    std::unordered_set<NodeId> node_ids;
    for (const Node& n : net.nodes) {
        if (!node_ids.insert(n.id).second) {
            throw InvariantViolation("duplicate node id " + std::to_string(n.id));
        }
        if (n.id >= net.next_node_id) {
            throw InvariantViolation("node id " + std::to_string(n.id) +
                                     " not below next_node_id");
        }
        if (n.x < 0 || n.x >= net.grid_width || n.y < 0 ||
            n.y >= net.grid_height) {
            throw InvariantViolation("node " + std::to_string(n.id) +
                                     " outside grid bounds");
        }
        if (n.failure_rate < 0.0 || n.failure_rate > 1.0) {
            throw InvariantViolation("node " + std::to_string(n.id) +
                                     " failure_rate outside [0,1]");
        }
        if (n.traffic < 0.0) {
            throw InvariantViolation("node " + std::to_string(n.id) +
                                     " has negative traffic");
        }
        if (n.down_age < 0) {
            throw InvariantViolation("node " + std::to_string(n.id) +
                                     " has negative down_age");
        }
        if (n.working && n.down_age != 0) {
            throw InvariantViolation("working node " + std::to_string(n.id) +
                                     " has nonzero down_age");
        }
    }

    for (std::size_t i = 0; i < net.nodes.size(); ++i) {
        for (std::size_t j = i + 1; j < net.nodes.size(); ++j) {
            if (node_distance(net.nodes[i], net.nodes[j]) < net.min_spacing) {
                throw InvariantViolation(
                    "nodes " + std::to_string(net.nodes[i].id) + " and " +
                    std::to_string(net.nodes[j].id) + " closer than min_spacing");
            }
        }
    }

    std::unordered_set<LinkId> link_ids;
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const Link& l : net.links) {
        if (!link_ids.insert(l.id).second) {
            throw InvariantViolation("duplicate link id " + std::to_string(l.id));
        }
        if (l.id >= net.next_link_id) {
            throw InvariantViolation("link id " + std::to_string(l.id) +
                                     " not below next_link_id");
        }
        const Node* a = net.find_node(l.from);
        const Node* b = net.find_node(l.to);
        if (a == nullptr || b == nullptr) {
            throw InvariantViolation("link " + std::to_string(l.id) +
                                     " references a missing node");
        }
        if (l.from == l.to) {
            throw InvariantViolation("link " + std::to_string(l.id) +
                                     " is a self-loop");
        }
        if (a->kind == NodeKind::Server && b->kind == NodeKind::Server) {
            throw InvariantViolation("link " + std::to_string(l.id) +
                                     " joins two servers");
        }
        const bool one_server =
            (a->kind == NodeKind::Server) != (b->kind == NodeKind::Server);
        if (one_server != (l.kind == LinkKind::ClientServer)) {
            throw InvariantViolation("link " + std::to_string(l.id) +
                                     " kind does not match endpoint kinds");
        }
        if (l.kind == LinkKind::ClientServer && b->kind != NodeKind::Server) {
            throw InvariantViolation("client-server link " +
                                     std::to_string(l.id) +
                                     " must be oriented client to server");
        }
        const auto key = std::minmax(l.from, l.to);
        if (!pairs.insert(key).second) {
            throw InvariantViolation("duplicate link between nodes " +
                                     std::to_string(key.first) + " and " +
                                     std::to_string(key.second));
        }
        if (l.failure_rate < 0.0 || l.failure_rate > 1.0) {
            throw InvariantViolation("link " + std::to_string(l.id) +
                                     " failure_rate outside [0,1]");
        }
        if (l.down_age < 0) {
            throw InvariantViolation("link " + std::to_string(l.id) +
                                     " has negative down_age");
        }
        if (l.working && l.down_age != 0) {
            throw InvariantViolation("working link " + std::to_string(l.id) +
                                     " has nonzero down_age");
        }
    }
}

namespace {

const char* node_kind_name(NodeKind k) {
    return k == NodeKind::Client ? "client" : "server";
}

const char* link_kind_name(LinkKind k) {
    return k == LinkKind::ClientClient ? "client_client" : "client_server";
}

NodeKind parse_node_kind(const std::string& s) {
    if (s == "client") return NodeKind::Client;
    if (s == "server") return NodeKind::Server;
    throw ParseError("unknown node kind '" + s + "'");
}

LinkKind parse_link_kind(const std::string& s) {
    if (s == "client_client") return LinkKind::ClientClient;
    if (s == "client_server") return LinkKind::ClientServer;
    throw ParseError("unknown link kind '" + s + "'");
}

// Typed field access; wrong or missing fields are ParseErrors, not crashes.
template <typename T>
T get_field(const ordered_json& obj, const char* key) {
    if (!obj.contains(key)) {
        throw ParseError(std::string("missing field '") + key + "'");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ParseError(std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

std::string serialize(const Network& net) {
    ordered_json doc;
    doc["format_version"] = 1;
    doc["grid"] = {{"width", net.grid_width}, {"height", net.grid_height}};
    doc["min_spacing"] = net.min_spacing;
    doc["server_capacity"] = net.server_capacity;
    doc["default_link_failure_rate"] = net.default_link_failure_rate;
    doc["next_node_id"] = net.next_node_id;
    doc["next_link_id"] = net.next_link_id;

    doc["nodes"] = ordered_json::array();
    for (const Node& n : net.nodes) {
        ordered_json jn;
        jn["id"] = n.id;
        jn["kind"] = node_kind_name(n.kind);
        jn["x"] = n.x;
        jn["y"] = n.y;
        if (n.kind == NodeKind::Client) jn["traffic"] = n.traffic;
        jn["failure_rate"] = n.failure_rate;
        jn["working"] = n.working;
        jn["down_age"] = n.down_age;
        doc["nodes"].push_back(std::move(jn));
    }

    doc["links"] = ordered_json::array();
    for (const Link& l : net.links) {
        ordered_json jl;
        jl["id"] = l.id;
        jl["endpoints"] = {l.from, l.to};
        jl["kind"] = link_kind_name(l.kind);
        jl["failure_rate"] = l.failure_rate;
        jl["working"] = l.working;
        jl["down_age"] = l.down_age;
        doc["links"].push_back(std::move(jl));
    }

    return doc.dump(2) + "\n";
}

Network deserialize(const std::string& document) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(document);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid snapshot: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("snapshot root must be an object");

    const auto version = get_field<int>(doc, "format_version");
    if (version != 1) {
        throw ParseError("unsupported format_version " + std::to_string(version));
    }

    Network net;
    const auto grid = get_field<ordered_json>(doc, "grid");
    net.grid_width = get_field<int>(grid, "width");
    net.grid_height = get_field<int>(grid, "height");
    net.min_spacing = get_field<double>(doc, "min_spacing");
    net.server_capacity = get_field<double>(doc, "server_capacity");
    net.default_link_failure_rate =
        get_field<double>(doc, "default_link_failure_rate");
    net.next_node_id = get_field<NodeId>(doc, "next_node_id");
    net.next_link_id = get_field<LinkId>(doc, "next_link_id");

    const auto nodes = get_field<ordered_json>(doc, "nodes");
    if (!nodes.is_array()) throw ParseError("'nodes' must be an array");
    for (const auto& jn : nodes) {
        Node n;
        n.id = get_field<NodeId>(jn, "id");
        n.kind = parse_node_kind(get_field<std::string>(jn, "kind"));
        n.x = get_field<int>(jn, "x");
        n.y = get_field<int>(jn, "y");
        n.traffic =
            n.kind == NodeKind::Client ? get_field<double>(jn, "traffic") : 0.0;
        n.failure_rate = get_field<double>(jn, "failure_rate");
        n.working = get_field<bool>(jn, "working");
        n.down_age = get_field<int>(jn, "down_age");
        net.nodes.push_back(n);
    }

    const auto links = get_field<ordered_json>(doc, "links");
    if (!links.is_array()) throw ParseError("'links' must be an array");
    for (const auto& jl : links) {
        Link l;
        l.id = get_field<LinkId>(jl, "id");
        const auto endpoints = get_field<ordered_json>(jl, "endpoints");
        if (!endpoints.is_array() || endpoints.size() != 2) {
            throw ParseError("link endpoints must be a pair of node ids");
        }
        try {
            l.from = endpoints.at(0).get<NodeId>();
            l.to = endpoints.at(1).get<NodeId>();
        } catch (const nlohmann::json::exception&) {
            throw ParseError("link endpoints must be node ids");
        }
        l.kind = parse_link_kind(get_field<std::string>(jl, "kind"));
        l.failure_rate = get_field<double>(jl, "failure_rate");
        l.working = get_field<bool>(jl, "working");
        l.down_age = get_field<int>(jl, "down_age");
        net.links.push_back(l);
    }

    validate(net);
    return net;
}

std::vector<int> working_component_labels(const Network& net) {
    const std::size_t n = net.nodes.size();
    std::unordered_map<NodeId, std::size_t> index;
    index.reserve(n);
    for (std::size_t i = 0; i < n; ++i) index.emplace(net.nodes[i].id, i);

    // union-find over working nodes
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&parent](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };

    for (const Link& l : net.links) {
        if (!l.working) continue;
        const std::size_t a = index.at(l.from);
        const std::size_t b = index.at(l.to);
        if (!net.nodes[a].working || !net.nodes[b].working) continue;
        parent[find(a)] = find(b);
    }

    std::vector<int> labels(n, -1);
    std::unordered_map<std::size_t, int> roots;
    int next_label = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!net.nodes[i].working) continue;
        const std::size_t r = find(i);
        auto [it, inserted] = roots.emplace(r, next_label);
        if (inserted) ++next_label;
        labels[i] = it->second;
    }
    return labels;
}

}  // namespace netevolve
