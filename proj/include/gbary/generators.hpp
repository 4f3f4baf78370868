#pragma once

#include <cstdint>
#include <vector>

#include "gbary/graph.hpp"

namespace gbary {

/// Stochastic block model with unit weights: intra-community pairs are
/// connected with probability p_in, inter-community pairs with p_out.
/// Resamples (up to max_retries) until the graph is connected.
Graph generate_sbm(const std::vector<int>& community, double p_in, double p_out,
                   std::uint64_t seed, int max_retries = 1000);

/// Convenience overload with a balanced partition into k communities.
Graph generate_sbm(int n_nodes, int k, double p_in, double p_out, std::uint64_t seed,
                   int max_retries = 1000);

/// Removes n_remove existing edges and adds n_add non-edges (unit weight),
/// both uniformly at random, rejecting removals that would disconnect the
/// graph. Throws InfeasiblePerturbationError when no valid move exists.
Graph perturb_edges(const Graph& g, int n_remove, int n_add, std::uint64_t seed);

/// Equal-size communities, Erdos-Renyi(p_in) inside each, consecutive
/// communities joined by exactly one edge whose endpoints are drawn from
/// two fixed patterns with probability 1/2 each:
///   pattern A: (last node of block c, first node of block c+1)
///   pattern B: (first node of block c, last node of block c+1)
/// Each community block is resampled until its induced subgraph is
/// connected, so the whole graph is connected by construction.
Graph generate_line_communities(int n_nodes, int n_communities, double p_in,
                                std::uint64_t seed, int max_retries = 1000);

/// Multi-layer graph for node-classification experiments: every layer is an
/// independent SBM draw over one shared ground-truth class assignment.
MultiLayerGraph generate_multilayer_sbm(int n_nodes, int n_classes, int n_layers,
                                        double p_in, double p_out, std::uint64_t seed);

}  // namespace gbary
