#include "gbary/graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gbary {

Graph::Graph(int num_nodes, std::vector<Edge> edges, std::vector<std::string> labels)
    : num_nodes_(num_nodes), edges_(std::move(edges)), labels_(std::move(labels)) {
  if (num_nodes_ <= 0) {
    throw Error("graph must have at least one node");
  }
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u < 0 || e.v >= num_nodes_) {
      throw Error("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw Error("self-loops are not allowed");
    }
    if (!std::isfinite(e.w)) {
      throw Error("edge weight is not finite");
    }
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
      throw Error("duplicate edge");
    }
  }
  if (labels_.empty()) {
    labels_.reserve(num_nodes_);
    for (int i = 0; i < num_nodes_; ++i) labels_.push_back(std::to_string(i));
  } else if (static_cast<int>(labels_.size()) != num_nodes_) {
    throw Error("node label count does not match node count");
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  const Edge probe{u, v, 0.0};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), probe,
                             [](const Edge& a, const Edge& b) {
                               return a.u != b.u ? a.u < b.u : a.v < b.v;
                             });
  return it != edges_.end() && it->u == u && it->v == v;
}

double Graph::total_weight() const {
  double sum = 0.0;
  for (const auto& e : edges_) sum += e.w;
  return sum;
}

Eigen::MatrixXd Graph::adjacency() const {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(num_nodes_, num_nodes_);
  for (const auto& e : edges_) {
    w(e.u, e.v) = e.w;
    w(e.v, e.u) = e.w;
  }
  return w;
}

Eigen::VectorXd Graph::degrees() const {
  // Incident weights are summed in sorted order so the result is invariant
  // under node relabeling (bit-exact permutation equivariance of L).
  std::vector<std::vector<double>> incident(num_nodes_);
  for (const auto& e : edges_) {
    incident[e.u].push_back(e.w);
    incident[e.v].push_back(e.w);
  }
  Eigen::VectorXd d = Eigen::VectorXd::Zero(num_nodes_);
  for (int i = 0; i < num_nodes_; ++i) {
    std::sort(incident[i].begin(), incident[i].end());
    double sum = 0.0;
    for (double w : incident[i]) sum += w;
    d[i] = sum;
  }
  return d;
}

LaplacianMatrix::LaplacianMatrix(SymMatrix m) : m_(std::move(m)) {
  const Eigen::VectorXd row_sums = m_.mat().rowwise().sum();
  const double bound = 1e-10 * (1.0 + m_.frobenius_norm());
  const double worst = row_sums.cwiseAbs().maxCoeff();
  if (worst > bound) {
    std::ostringstream msg;
    msg << "Laplacian row sums are not zero (max |sum| = " << worst << ")";
    throw Error(msg.str());
  }
}

LaplacianMatrix laplacian(const Graph& g) {
  Eigen::MatrixXd l = -g.adjacency();
  const Eigen::VectorXd d = g.degrees();
  for (int i = 0; i < g.num_nodes(); ++i) l(i, i) = d[i];
  return LaplacianMatrix(SymMatrix::symmetrized(l));
}

NormalizedLaplacian normalized_laplacian(const Graph& g) {
  const Eigen::VectorXd d = g.degrees();
  for (int i = 0; i < g.num_nodes(); ++i) {
    if (d[i] <= 0.0) {
      std::ostringstream msg;
      msg << "node " << i << " has non-positive degree " << d[i];
      throw ZeroDegreeError(msg.str(), i);
    }
  }
  const Eigen::VectorXd dinv_sqrt = d.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd l = laplacian(g).mat();
  const Eigen::MatrixXd nl =
      dinv_sqrt.asDiagonal() * l * dinv_sqrt.asDiagonal();
  return NormalizedLaplacian(SymMatrix::symmetrized(nl));
}

ConnectivityReport check_connectivity(const Eigen::VectorXd& eigenvalues,
                                    std::optional<double> tol_opt) {
  ConnectivityReport rep;
  const double max_abs = eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  rep.tol = tol_opt.value_or(max_abs > 0.0 ? 1e-8 * max_abs : 1e-12);
  rep.lambda_min = eigenvalues.size() == 0 ? 0.0 : eigenvalues[0];
  rep.lambda_second = eigenvalues.size() > 1 ? eigenvalues[1] : 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues[i]) < rep.tol) ++rep.near_zero_count;
  }
  std::ostringstream msg;
  if (rep.lambda_min <= -rep.tol) {
    msg << "negative eigenvalue " << rep.lambda_min;
  } else if (rep.near_zero_count != 1) {
    msg << rep.near_zero_count << " near-zero eigenvalues (expected 1)";
  } else if (eigenvalues.size() > 1 && rep.lambda_second <= rep.tol) {
    msg << "second eigenvalue " << rep.lambda_second << " is not positive";
  } else {
    rep.ok = true;
  }
  rep.detail = msg.str();
  return rep;
}

ConnectivityReport check_connectivity(const LaplacianMatrix& l, std::optional<double> tol) {
  return check_connectivity(eig_sym(l.sym()).eigenvalues, tol);
}

Graph permute(const Graph& g, const std::vector<int>& perm) {
  const int n = g.num_nodes();
  if (static_cast<int>(perm.size()) != n) {
    throw InvalidPermutationError("permutation length does not match node count");
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) {
      throw InvalidPermutationError("permutation is not a bijection on node indices");
    }
    seen[p] = true;
  }
  std::vector<Edge> edges;
  edges.reserve(g.edges().size());
  for (const auto& e : g.edges()) {
    edges.push_back(Edge{perm[e.u], perm[e.v], e.w});
  }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[perm[i]] = g.node_labels()[i];
  return Graph(n, std::move(edges), std::move(labels));
}

Graph graph_from_laplacian(const SymMatrix& l, std::vector<std::string> labels,
                           double drop_tol_rel) {
  const int n = l.dim();
  const double max_abs = l.mat().cwiseAbs().maxCoeff();
  const double drop = drop_tol_rel * max_abs;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double w = -l(i, j);
      if (std::abs(w) > drop) edges.push_back(Edge{i, j, w});
    }
  }
  return Graph(n, std::move(edges), std::move(labels));
}

std::vector<int> balanced_partition(int n, int k) {
  if (k <= 0 || k > n) {
    throw Error("block count must be in [1, n]");
  }
  std::vector<int> community(n);
  const int base = n / k;
  const int remainder = n % k;
  int node = 0;
  for (int c = 0; c < k; ++c) {
    const int size = base + (c < remainder ? 1 : 0);
    for (int i = 0; i < size; ++i) community[node++] = c;
  }
  return community;
}

bool is_connected(const Graph& g) {
  const int n = g.num_nodes();
  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<bool> visited(n, false);
  std::vector<int> stack{0};
  visited[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!visited[v]) {
        visited[v] = true;
        ++count;
        stack.push_back(v);
      }
    }
  }
  return count == n;
}

}  // namespace gbary
