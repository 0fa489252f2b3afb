// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

/// Dirichlet eigenpair of -Δ_h: lambda > 0, phi L²-normalized (node sum · h³).
struct EigenPair {
  double lambda;
  ScalarField phi;
};

struct EigenOptions {
  /// Contract: every returned pair has ||Δφ + λφ|| <= tol_resid · λ.
  double tol_resid = 1e-8;
  /// The iteration keeps going until this tighter level (or stagnation).
  double target_resid = 1e-11;
  int max_iter = 400;
  /// Extra block vectors beyond m; keeps degenerate clusters at the cut resolvable.
  int guard = 10;
  int filter_degree = 16;
  std::uint64_t seed = 0xB0DE;
  /// Dense eigendecomposition for domains with at most this many interior nodes.
  std::size_t dense_threshold = 1500;
};

/// Lowest m eigenpairs, sorted ascending, orthonormal in L².
///
/// Large domains use Chebyshev-filtered block subspace iteration with
/// Rayleigh-Ritz projection; only the stencil and inner products touch the
/// grid. Throws DomainError for m out of range and ConvergenceError (with the
/// worst residual reached) when max_iter runs out.
std::vector<EigenPair> compute_eigenpairs(const DomainPtr& domain, int m,
                                          const EigenOptions& options = {});

/// All interior_count() eigenpairs by dense decomposition. Small grids only.
std::vector<EigenPair> compute_full_spectrum(const DomainPtr& domain);

/// ||Δφ + λφ||_{L²}
double eigen_residual(const EigenPair& pair);

/// Rayleigh quotient ||∇φ||² / ||φ||².
double rayleigh_quotient(const ScalarField& phi);

struct EigenBoundRow {
  int n;  // 1-based
  double lambda;
  double sup;
  double bound;  // λ^{3/4} / √(2π)
  double ratio;  // sup / bound
  bool flagged;  // ratio > 1 + tol_disc
};

/// Pointwise eigenfunction bound sup|φ| <= λ^{3/4}/√(2π), one row per pair.
std::vector<EigenBoundRow> check_corollary2(std::span<const EigenPair> pairs,
                                            double tol_disc = 0.05);

}  // namespace sharpbound
