#include "gbary/generators.hpp"

#include <algorithm>
#include <sstream>

#include "gbary/rng.hpp"

namespace gbary {

namespace {

std::vector<Edge> sample_block_pairs(const std::vector<int>& community, double p_in,
                                     double p_out, Rng& rng) {
  const int n = static_cast<int>(community.size());
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double p = community[i] == community[j] ? p_in : p_out;
      if (rng.bernoulli(p)) edges.push_back(Edge{i, j, 1.0});
    }
  }
  return edges;
}

}  // namespace

Graph generate_sbm(const std::vector<int>& community, double p_in, double p_out,
                   std::uint64_t seed, int max_retries) {
  if (p_in < 0.0 || p_in > 1.0 || p_out < 0.0 || p_out > 1.0) {
    throw Error("edge probabilities must lie in [0, 1]");
  }
  Rng rng(seed);
  const int n = static_cast<int>(community.size());
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Graph g(n, sample_block_pairs(community, p_in, p_out, rng));
    if (is_connected(g)) return g;
  }
  std::ostringstream msg;
  msg << "no connected SBM sample within " << max_retries << " attempts";
  throw NotConnectedError(msg.str());
}

Graph generate_sbm(int n_nodes, int k, double p_in, double p_out, std::uint64_t seed,
                   int max_retries) {
  return generate_sbm(balanced_partition(n_nodes, k), p_in, p_out, seed, max_retries);
}

Graph perturb_edges(const Graph& g, int n_remove, int n_add, std::uint64_t seed) {
  Rng rng(seed);
  const int n = g.num_nodes();
  std::vector<Edge> edges = g.edges();

  for (int step = 0; step < n_remove; ++step) {
    std::vector<int> candidates(edges.size());
    for (std::size_t i = 0; i < edges.size(); ++i) candidates[i] = static_cast<int>(i);
    bool removed = false;
    while (!candidates.empty()) {
      const std::size_t pick = rng.below(candidates.size());
      const int edge_index = candidates[pick];
      std::vector<Edge> trial = edges;
      trial.erase(trial.begin() + edge_index);
      if (is_connected(Graph(n, trial))) {
        edges = std::move(trial);
        removed = true;
        break;
      }
      candidates[pick] = candidates.back();
      candidates.pop_back();
    }
    if (!removed) {
      throw InfeasiblePerturbationError(
          "every remaining edge removal would disconnect the graph");
    }
  }

  std::vector<std::pair<int, int>> non_edges;
  {
    Graph current(n, edges);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (!current.has_edge(i, j)) non_edges.emplace_back(i, j);
      }
    }
  }
  for (int step = 0; step < n_add; ++step) {
    if (non_edges.empty()) {
      throw InfeasiblePerturbationError("no non-edge left to add");
    }
    const std::size_t pick = rng.below(non_edges.size());
    const auto [u, v] = non_edges[pick];
    non_edges[pick] = non_edges.back();
    non_edges.pop_back();
    edges.push_back(Edge{u, v, 1.0});
  }

  return Graph(n, std::move(edges), g.node_labels());
}

Graph generate_line_communities(int n_nodes, int n_communities, double p_in,
                                std::uint64_t seed, int max_retries) {
  if (n_communities < 1) {
    throw Error("community count must be at least 1");
  }
  if (p_in < 0.0 || p_in > 1.0) {
    throw Error("edge probability must lie in [0, 1]");
  }
  std::vector<int> block_start(n_communities, 0);
  std::vector<int> block_end(n_communities, 0);  // inclusive
  {
    const int base = n_nodes / n_communities;
    const int remainder = n_nodes % n_communities;
    int node = 0;
    for (int c = 0; c < n_communities; ++c) {
      block_start[c] = node;
      node += base + (c < remainder ? 1 : 0);
      block_end[c] = node - 1;
    }
  }

  Rng rng(seed);
  std::vector<Edge> edges;
  for (int c = 0; c < n_communities; ++c) {
    const int lo = block_start[c];
    const int size = block_end[c] - lo + 1;
    bool ok = false;
    for (int attempt = 0; attempt < max_retries && !ok; ++attempt) {
      std::vector<Edge> block;
      for (int i = 0; i < size; ++i) {
        for (int j = i + 1; j < size; ++j) {
          if (rng.bernoulli(p_in)) block.push_back(Edge{i, j, 1.0});
        }
      }
      if (size == 1 || is_connected(Graph(size, block))) {
        for (const auto& e : block) edges.push_back(Edge{lo + e.u, lo + e.v, 1.0});
        ok = true;
      }
    }
    if (!ok) {
      std::ostringstream msg;
      msg << "no connected community block within " << max_retries << " attempts";
      throw NotConnectedError(msg.str());
    }
  }
  for (int c = 0; c + 1 < n_communities; ++c) {
    const bool pattern_a = rng.bernoulli(0.5);
    const int u = pattern_a ? block_end[c] : block_start[c];
    const int v = pattern_a ? block_start[c + 1] : block_end[c + 1];
    edges.push_back(Edge{u, v, 1.0});
  }

  Graph g(n_nodes, std::move(edges));
  if (!is_connected(g)) {
    throw NotConnectedError("line-communities sample is not connected");
  }
  return g;
}

MultiLayerGraph generate_multilayer_sbm(int n_nodes, int n_classes, int n_layers,
                                        double p_in, double p_out, std::uint64_t seed) {
  MultiLayerGraph ml;
  ml.labels = balanced_partition(n_nodes, n_classes);
  ml.layers.reserve(n_layers);
  for (int layer = 0; layer < n_layers; ++layer) {
    ml.layers.push_back(
        generate_sbm(ml.labels, p_in, p_out, derive_seed(seed, layer)));
  }
  return ml;
}

}  // namespace gbary
