#pragma once

#include <span>
#include <string>
#include <string_view>

#include "gbary/embedding.hpp"
#include "gbary/graph.hpp"

namespace gbary {

/// Graph distance selector: the Bures-Wasserstein distance of (filtered)
/// signal covariances, or one of the Frobenius baselines.
struct DistanceKind {
  enum class Family {
    BuresWasserstein,
    LaplacianFrobenius,
    PinvLaplacianFrobenius,
  };

  Family family = Family::BuresWasserstein;
  SpectralFilter filter;  // only meaningful for BuresWasserstein

  static DistanceKind bures_wasserstein(SpectralFilter f = {}) {
    return DistanceKind{Family::BuresWasserstein, f};
  }
  static DistanceKind laplacian_frobenius() {
    return DistanceKind{Family::LaplacianFrobenius, {}};
  }
  static DistanceKind pinv_laplacian_frobenius() {
    return DistanceKind{Family::PinvLaplacianFrobenius, {}};
  }

  /// "bw", "bw:pinv", "bw:sqrt", "bw:identity", "frobenius", "frobenius-pinv".
  static DistanceKind from_name(std::string_view name);
  std::string name() const;
};

/// Wasserstein-2 distance between the zero-mean Gaussians N(0, s0) and
/// N(0, s1); both covariances may be degenerate. Computed in the
/// orthogonal-Procrustes form ||s0^{1/2} - s1^{1/2} U||_F (equal to the
/// trace formula, but free of the cancellation that formula suffers near
/// zero distance).
double bw_gaussian_distance(const SymMatrix& s0, const SymMatrix& s1);

/// Per-graph cached feature for bulk distance evaluation: the covariance
/// square root for BW kinds, L or pinv(L) for the Frobenius kinds.
struct DistancePoint {
  Eigen::MatrixXd feature;
};

DistancePoint distance_point(const Graph& g, const DistanceKind& kind);
DistancePoint distance_point(const LaplacianMatrix& l, const DistanceKind& kind);
double distance_between(const DistancePoint& a, const DistancePoint& b,
                        const DistanceKind& kind);

double graph_distance(const Graph& g0, const Graph& g1, const DistanceKind& kind = {});

/// Full symmetric distance table; D(i,i) = 0.
Eigen::MatrixXd pairwise_distances(std::span<const Graph> graphs,
                                   const DistanceKind& kind = {});

}  // namespace gbary
