// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

// The radial extremal u(r) = (1 - e^{-r}) / r and its derivatives.
double extremal_value(double r);
double extremal_derivative(double r);
/// Δu = -e^{-r}/r
double extremal_laplacian(double r);

// C² cutoff ψ(t): 1 on [0, ½], quintic descent on [½, 1], 0 beyond.
// With s = 2t - 1, ψ = 1 - (10s³ - 15s⁴ + 6s⁵); ψ' and ψ'' vanish at both ends.
double cutoff_bump(double t);
double cutoff_bump_derivative(double t);
double cutoff_bump_second_derivative(double t);

enum class ProfileKind { Extremal, Sampled };

/// Radial profile f(r), either the (optionally cut) extremal in closed form
/// or plain samples. Closed-form profiles carry samples for export and for
/// the finite-difference cross-check.
struct RadialProfile {
  ProfileKind kind = ProfileKind::Sampled;
  std::vector<double> r_nodes;
  std::vector<double> values;
  std::optional<double> cutoff_radius;  // R, in unscaled profile units
  /// Length scale s: the profile represents f(r / s).
  double scale = 1.0;

  double r_max() const { return r_nodes.empty() ? 0.0 : r_nodes.back(); }
  /// Support radius s·R, if cut.
  std::optional<double> support_radius() const;
};

/// Uncut extremal sampled uniformly on [0, r_max].
RadialProfile extremal_profile(double r_max = 40.0, std::size_t samples = 40001);
/// u(r) ψ(r/R) sampled uniformly on [0, R]. Requires R >= 4.
RadialProfile cutoff_sequence(double R, std::size_t samples = 20001);
/// Same profile, representing f(r / s).
RadialProfile rescaled(RadialProfile profile, double s);
/// Generic samples; r_nodes must start at 0 and be uniformly spaced.
RadialProfile sampled_profile(std::vector<double> r_nodes, std::vector<double> values);

/// Profile value at radius r (closed form when available, else linear interpolation).
double profile_value(const RadialProfile& profile, double r);

struct RadialIntegrals {
  double sup = 0.0;
  double grad_sq = 0.0;  // ∫ |∇f|² over R³
  double lap_sq = 0.0;   // ∫ |Δf|² over R³
  /// sup² / (√grad_sq √lap_sq); zero when either integral vanishes.
  double quotient() const;
};

/// High-accuracy integrals. Closed-form profiles use adaptive Gauss-Kronrod
/// with analytic derivatives; the uncut extremal also integrates the tail
/// out to infinity. Sampled profiles fall back to the finite-difference route.
/// Throws std::runtime_error if the estimated error exceeds `tol`.
RadialIntegrals radial_integrals(const RadialProfile& profile, double tol = 1e-8);

/// Independent route: central differences of the stored samples on [0, r_max],
/// Δf computed as (r f)'' / r, Simpson quadrature.
RadialIntegrals radial_integrals_finite_difference(const RadialProfile& profile);

/// Interior node used as the embedding centre (deepest by hop distance).
Index3 embedding_center(const VoxelDomain& domain);
/// Euclidean distance from `center` to the nearest non-interior node.
double inscribed_radius(const VoxelDomain& domain, Index3 center);

/// Samples the cut profile on the domain, centred at embedding_center and
/// scaled so the support radius equals the inscribed radius. Throws
/// DomainError if the inscribed ball is smaller than 3h or the profile is uncut.
ScalarField embed_in_domain(const RadialProfile& profile, const DomainPtr& domain);

}  // namespace sharpbound
