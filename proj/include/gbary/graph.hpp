#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gbary/spectral.hpp"

namespace gbary {

/// Undirected weighted edge, stored with u < v. Weights may be negative.
struct Edge {
  int u;
  int v;
  double w;
};

/// Labeled weighted undirected graph without self-loops. Edges are kept
/// sorted by (u, v) so that serialization and iteration are deterministic.
class Graph {
 public:
  Graph(int num_nodes, std::vector<Edge> edges, std::vector<std::string> labels = {});

  int num_nodes() const { return num_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& node_labels() const { return labels_; }

  bool has_edge(int u, int v) const;
  double total_weight() const;

  /// Weighted adjacency matrix W.
  Eigen::MatrixXd adjacency() const;
  /// Weighted degrees D_ii = sum_k W_ik.
  Eigen::VectorXd degrees() const;

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
};

/// Signed graph Laplacian L = D - W; rows sum to zero by construction,
/// and the constructor validates that within 1e-10 * (1 + ||L||_F).
class LaplacianMatrix {
 public:
  explicit LaplacianMatrix(SymMatrix m);

  int dim() const { return m_.dim(); }
  const SymMatrix& sym() const { return m_; }
  const Eigen::MatrixXd& mat() const { return m_.mat(); }

 private:
  SymMatrix m_;
};

/// Symmetrically normalized Laplacian D^{-1/2} L D^{-1/2}.
class NormalizedLaplacian {
 public:
  explicit NormalizedLaplacian(SymMatrix m) : m_(std::move(m)) {}

  int dim() const { return m_.dim(); }
  const SymMatrix& sym() const { return m_; }
  const Eigen::MatrixXd& mat() const { return m_.mat(); }

 private:
  SymMatrix m_;
};

/// Several edge sets over one shared node set, with optional node classes.
struct MultiLayerGraph {
  std::vector<Graph> layers;
  std::vector<int> labels;  // empty when unknown
};

LaplacianMatrix laplacian(const Graph& g);

NormalizedLaplacian normalized_laplacian(const Graph& g);

struct ConnectivityReport {
  bool ok = false;
  double tol = 0.0;
  double lambda_min = 0.0;
  double lambda_second = 0.0;  // second-smallest eigenvalue
  int near_zero_count = 0;
  std::string detail;
  explicit operator bool() const { return ok; }
};

/// True iff L is PSD with exactly one (near-)zero eigenvalue, i.e. the
/// graph is connected in the signed sense. Default tolerance is
/// 1e-8 * max |eigenvalue|.
ConnectivityReport check_connectivity(const LaplacianMatrix& l,
                                    std::optional<double> tol = std::nullopt);
ConnectivityReport check_connectivity(const Eigen::VectorXd& eigenvalues,
                                    std::optional<double> tol = std::nullopt);

/// Relabels nodes: node i of g becomes node perm[i]. The Laplacian is
/// conjugated by the corresponding permutation matrix.
Graph permute(const Graph& g, const std::vector<int>& perm);

/// Reads a graph off a Laplacian-like matrix: w_ij = -L(i,j) for i < j,
/// dropping entries below drop_tol_rel * max |L|.
Graph graph_from_laplacian(const SymMatrix& l, std::vector<std::string> labels = {},
                           double drop_tol_rel = 1e-12);

/// Balanced community assignment of n nodes into k blocks; when k does not
/// divide n the first blocks take the remainder.
std::vector<int> balanced_partition(int n, int k);

bool is_connected(const Graph& g);

}  // namespace gbary
