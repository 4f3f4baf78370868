#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gbary/barycenter.hpp"

namespace gbary {

/// Mean selector used by the experiments: the Bures-Wasserstein mean or one
/// of the Laplacian baselines. Power(1) is the arithmetic mean, Power(-1)
/// the harmonic mean.
struct MeanKind {
  enum class Family { BuresWasserstein, Arithmetic, Harmonic, Power, Karcher };

  Family family = Family::BuresWasserstein;
  SpectralFilter filter;  // BuresWasserstein only
  double exponent = 1.0;  // Power only

  static MeanKind bures_wasserstein(SpectralFilter f = {}) {
    return MeanKind{Family::BuresWasserstein, f, 1.0};
  }
  static MeanKind arithmetic() { return MeanKind{Family::Arithmetic, {}, 1.0}; }
  static MeanKind harmonic() { return MeanKind{Family::Harmonic, {}, 1.0}; }
  static MeanKind power(double p) { return MeanKind{Family::Power, {}, p}; }
  static MeanKind karcher() { return MeanKind{Family::Karcher, {}, 1.0}; }

  /// "bw", "bw:<filter>", "arithmetic", "harmonic", "power:<p>", "karcher".
  static MeanKind from_name(std::string_view name);
  std::string name() const;
};

/// sum_j w_j L_j. Empty weights mean uniform.
LaplacianMatrix arithmetic_mean(std::span<const LaplacianMatrix> ls,
                                std::vector<double> weights = {});

/// pinv(sum_j w_j pinv(L_j)), pseudo-inverses restricted to the common
/// ones-complement nullspace.
LaplacianMatrix harmonic_mean(std::span<const LaplacianMatrix> ls,
                              std::vector<double> weights = {});

/// (sum_j w_j (A_j + shift_eps I)^p)^{1/p} for symmetric PSD inputs.
/// shift_eps defaults to 1e-6 for p < 0 (singular inputs) and 0 otherwise.
SymMatrix power_mean(std::span<const SymMatrix> as, std::vector<double> weights,
                     double p, std::optional<double> shift_eps = std::nullopt);

/// Affine-invariant (Karcher) mean, computed on the J/N-shifted SPD cone by
/// the gradient fixed point
///   X <- X^{1/2} exp(sum_j w_j log(X^{-1/2} (L_j + J/N) X^{-1/2})) X^{1/2}
/// with the shift removed afterwards.
LaplacianMatrix karcher_mean(std::span<const LaplacianMatrix> ls,
                             std::vector<double> weights = {},
                             double tol = 1e-9, int max_iter = 200);

/// Uniform dispatch over the mean kinds; BW routes through bw_mean.
SymMatrix mean_of(std::span<const LaplacianMatrix> ls, std::vector<double> weights,
                  const MeanKind& kind, const FixedPointConfig& cfg = {});

}  // namespace gbary
