#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "gbary/generators.hpp"
#include "gbary/graph.hpp"
#include "gbary/rng.hpp"

namespace gbary::test {

inline Eigen::MatrixXd random_matrix(int rows, int cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = 2.0 * rng.uniform01() - 1.0;
  }
  return m;
}

inline SymMatrix random_sym(int n, Rng& rng) {
  return SymMatrix::symmetrized(random_matrix(n, n, rng));
}

/// Random PSD matrix of the given rank (full rank by default).
inline SymMatrix random_psd(int n, Rng& rng, int rank = -1) {
  if (rank < 0) rank = n;
  const Eigen::MatrixXd b = random_matrix(n, rank, rng);
  return SymMatrix::symmetrized(b * b.transpose());
}

/// Connected graph with positive random weights; satisfies the
/// connectivity assumption by construction.
inline Graph random_connected_graph(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 17));
  const int k = 1 + static_cast<int>(rng.below(3));
  Graph g = generate_sbm(n, std::min(k, n), 0.6, 0.25, seed);
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w = 0.5 + 1.5 * rng.uniform01();
  return Graph(n, std::move(edges));
}

inline SymMatrix diag(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v[i++] = x;
  return SymMatrix::checked(Eigen::MatrixXd(v.asDiagonal()));
}

inline Graph path2(double w) { return Graph(2, {Edge{0, 1, w}}); }

inline Graph triangle(double w) {
  return Graph(3, {Edge{0, 1, w}, Edge{0, 2, w}, Edge{1, 2, w}});
}

inline Eigen::MatrixXd ones_shift(int n) {
  return Eigen::MatrixXd::Constant(n, n, 1.0 / n);
}

}  // namespace gbary::test
