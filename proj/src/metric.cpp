#include "gbary/metric.hpp"

#include <cmath>

namespace gbary {

DistanceKind DistanceKind::from_name(std::string_view name) {
  if (name == "bw" || name == "bw:pinv_sqrt") return bures_wasserstein();
  if (name == "bw:pinv") return bures_wasserstein(SpectralFilter(FilterKind::Pinv));
  if (name == "bw:sqrt") return bures_wasserstein(SpectralFilter(FilterKind::Sqrt));
  if (name == "bw:identity")
    return bures_wasserstein(SpectralFilter(FilterKind::Identity));
  if (name == "frobenius") return laplacian_frobenius();
  if (name == "frobenius-pinv") return pinv_laplacian_frobenius();
  throw Error("unknown distance kind: " + std::string(name));
}

std::string DistanceKind::name() const {
  switch (family) {
    case Family::LaplacianFrobenius: return "frobenius";
    case Family::PinvLaplacianFrobenius: return "frobenius-pinv";
    case Family::BuresWasserstein:
      if (filter.kind() == FilterKind::PinvSqrt) return "bw";
      return "bw:" + std::string(filter.name());
  }
  return "";
}

namespace {

/// d = || r0 - r1 * U ||_F where U is the orthogonal polar factor of
/// r1 * r0 and r0, r1 are PSD square roots of the two covariances.
double bw_from_sqrts(const Eigen::MatrixXd& r0, const Eigen::MatrixXd& r1) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r1 * r0,
                                        Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXd u = svd.matrixU() * svd.matrixV().transpose();
  return (r0 - r1 * u).norm();
}

/// Square root of g(L)^2 from the Laplacian spectrum, with pseudo-inverse
/// semantics on the (clamped) zero eigenvalues.
Eigen::MatrixXd covariance_sqrt_from_spectrum(const EigenDecomposition& eig,
                                              SpectralFilter filter) {
  const double tol = default_rank_tol(eig.eigenvalues);
  Eigen::VectorXd mapped(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double lambda = eig.eigenvalues[i];
    if (std::abs(lambda) < tol) {
      mapped[i] = 0.0;
    } else {
      const double g = filter.forward(lambda);
      if (!std::isfinite(g)) {
        throw DomainError("filter undefined on Laplacian eigenvalue", lambda);
      }
      mapped[i] = std::abs(g);
    }
  }
  return eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.transpose();
}

void require_same_dim(int a, int b) {
  if (a != b) {
    throw DimensionMismatchError("graphs have different node counts");
  }
}

}  // namespace

double bw_gaussian_distance(const SymMatrix& s0, const SymMatrix& s1) {
  require_same_dim(s0.dim(), s1.dim());
  return bw_from_sqrts(psd_sqrt(s0).mat(), psd_sqrt(s1).mat());
}

DistancePoint distance_point(const LaplacianMatrix& l, const DistanceKind& kind) {
  switch (kind.family) {
    case DistanceKind::Family::LaplacianFrobenius:
      return DistancePoint{l.mat()};
    case DistanceKind::Family::PinvLaplacianFrobenius:
      return DistancePoint{psd_pinv(l.sym()).mat()};
    case DistanceKind::Family::BuresWasserstein: {
      const EigenDecomposition eig = eig_sym(l.sym());
      const ConnectivityReport rep = check_connectivity(eig.eigenvalues);
      if (!rep.ok) {
        throw AssumptionViolatedError("graph distance: " + rep.detail);
      }
      return DistancePoint{covariance_sqrt_from_spectrum(eig, kind.filter)};
    }
  }
  throw Error("unreachable distance kind");
}

DistancePoint distance_point(const Graph& g, const DistanceKind& kind) {
  return distance_point(laplacian(g), kind);
}

double distance_between(const DistancePoint& a, const DistancePoint& b,
                        const DistanceKind& kind) {
  require_same_dim(static_cast<int>(a.feature.rows()),
                   static_cast<int>(b.feature.rows()));
  if (kind.family == DistanceKind::Family::BuresWasserstein) {
    return bw_from_sqrts(a.feature, b.feature);
  }
  return (a.feature - b.feature).norm();
}

double graph_distance(const Graph& g0, const Graph& g1, const DistanceKind& kind) {
  require_same_dim(g0.num_nodes(), g1.num_nodes());
  return distance_between(distance_point(g0, kind), distance_point(g1, kind), kind);
}

Eigen::MatrixXd pairwise_distances(std::span<const Graph> graphs,
                                   const DistanceKind& kind) {
  const int n = static_cast<int>(graphs.size());
  std::vector<DistancePoint> points;
  points.reserve(n);
  for (const auto& g : graphs) points.push_back(distance_point(g, kind));
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = distance_between(points[i], points[j], kind);
    }
  }
  return d;
}

}  // namespace gbary
