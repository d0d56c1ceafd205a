#ifndef NETEVOLVE_METRICS_HPP
#define NETEVOLVE_METRICS_HPP

#include "netevolve/core_model.hpp"
#include "netevolve/rng.hpp"

namespace netevolve {

// One evaluation of a network. All fields are nonnegative; reliability is a
// probability and fitness is 0 whenever cost is 0.
struct MetricsRow {
    double fitness = 0.0;
    double reliability = 0.0;
    double cost = 0.0;
    double redundancy = 0.0;
    double pleiotropy = 0.0;
};

// Sum of Euclidean link lengths (installed plant: working and failed links
// both count) times the price constant.
double cost(const Network& net, double cost_per_unit_length);

// Monte-Carlo reliability: samples n_pairs unordered distinct node pairs
// (with replacement across samples) and returns the fraction connected by
// working nodes and working links. Throws TooFewNodes below 2 nodes.
double reliability(const Network& net, int n_pairs, Rng& rng);

// Largest network exact_reliability will enumerate.
inline constexpr std::size_t kExactReliabilityMaxNodes = 64;

// Exact connected fraction over all unordered distinct node pairs; the limit
// of reliability() as n_pairs grows. Deliberately uses per-pair BFS rather
// than the component labelling the estimator relies on, so the two routes
// stay independent. Throws TooLarge above kExactReliabilityMaxNodes.
double exact_reliability(const Network& net);

// F = R / P, with F = 0 when P = 0 so an empty network is never favoured.
double fitness(const Network& net, int n_pairs, Rng& rng,
               double cost_per_unit_length);

// Mean client out-degree toward servers, per server. By default only
// client-server links count; include_client_client_links widens O_i to every
// link incident to the client. Failed links count either way.
double redundancy(const Network& net, bool include_client_client_links = false);

// Mean server in-degree, per client. Throws NoClients.
double pleiotropy(const Network& net);

// Evaluates every metric in one pass, sharing one reliability estimate.
MetricsRow evaluate_metrics(const Network& net, int n_pairs, Rng& rng,
                            double cost_per_unit_length);

}  // namespace netevolve

#endif  // NETEVOLVE_METRICS_HPP
