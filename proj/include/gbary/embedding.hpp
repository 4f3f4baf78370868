#pragma once

#include <string>
#include <string_view>

#include "gbary/graph.hpp"

namespace gbary {

enum class FilterKind {
  Pinv,      // g(L) = L^+        (most low-pass)
  PinvSqrt,  // g(L) = L^{+/2}    (standard smooth-signal embedding)
  Sqrt,      // g(L) = L^{1/2}
  Identity,  // g(L) = L          (most high-pass)
};

/// Spectral graph filter represented by its scalar eigenvalue map. All four
/// kinds are bijective on strictly positive eigenvalues, so filtered
/// embeddings can be inverted exactly.
class SpectralFilter {
 public:
  SpectralFilter() = default;  // PinvSqrt
  explicit SpectralFilter(FilterKind kind) : kind_(kind) {}

  static SpectralFilter from_name(std::string_view name);
  std::string_view name() const;
  FilterKind kind() const { return kind_; }

  /// Forward eigenvalue map g (defined for x > 0).
  double forward(double x) const;
  /// Inverse eigenvalue map g^{-1} (defined for y > 0).
  double inverse(double y) const;
  /// g(x)^2, the covariance eigenvalue of a filtered white signal.
  double covariance_eigenvalue(double x) const;
  /// g^{-1}(sqrt(sigma)); recovers a Laplacian eigenvalue from a covariance
  /// eigenvalue sigma > 0.
  double laplacian_eigenvalue(double sigma) const;

  bool operator==(const SpectralFilter& other) const { return kind_ == other.kind_; }

 private:
  FilterKind kind_ = FilterKind::PinvSqrt;
};

/// Strictly positive definite covariance of a graph's (filtered) signal
/// distribution. The eigendecomposition is computed once at construction
/// and cached for reuse inside fixed-point iterations.
struct CovarianceEmbedding {
  SymMatrix matrix;
  int source_dim = 0;
  SpectralFilter filter;
  EigenDecomposition eig;  // of `matrix`, eigenvalues ascending

  double min_eigenvalue() const { return eig.eigenvalues[0]; }
};

/// Smooth-signal embedding of a connected-graph Laplacian:
/// Sigma = (L + J/N)^{-1} = L^+ + J/N, strictly positive definite.
CovarianceEmbedding embed(const LaplacianMatrix& l);

/// Filtered embedding Sigma = g(L + J/N)^2.
CovarianceEmbedding embed_filtered(const LaplacianMatrix& l, SpectralFilter g);

/// Rank-one-shift embedding for a PSD matrix whose nullspace is spanned by
/// an arbitrary unit vector v (not necessarily the ones vector):
/// Sigma = pinv(M) + v v^T. Throws RankError unless the (near-)zero
/// eigenvalue has multiplicity exactly one.
CovarianceEmbedding embed_general(const SymMatrix& m,
                                  std::optional<double> null_tol = std::nullopt);

/// Inverse of `embed`: L = Sigma^{-1} - J/N.
LaplacianMatrix unembed(const SymMatrix& sigma);
LaplacianMatrix unembed(const CovarianceEmbedding& e);

/// Inverse of `embed_filtered`: L = g^{-1}(Sigma^{1/2}) - J/N.
LaplacianMatrix unembed_filtered(const SymMatrix& sigma, SpectralFilter g);

}  // namespace gbary
