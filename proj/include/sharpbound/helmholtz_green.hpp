// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

#include "sharpbound/conjugate_gradient.hpp"
#include "sharpbound/eigensolver.hpp"
#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

/// Discrete Green function of (μ - Δ_h) with zero boundary values.
struct GreenSolution {
  ScalarField field;
  Index3 source;
  double mu;
  double l2_sq;  // ∫G² by node quadrature
  int iterations;
  double rel_residual;
};

/// Solves (μI - Δ_h) G = e_{x₀} / h³ by conjugate gradients.
/// Throws DomainError for a non-interior source or μ <= 0, and
/// ConvergenceError if CG misses 1e-10 relative residual.
GreenSolution solve_green(const DomainPtr& domain, Index3 x0, double mu,
                          const CgOptions& options = {});

/// Free-space fundamental solution e^{-√μ r} / (4π r).
double fundamental_solution(double r, double mu);
/// ∫_{R³} (fundamental solution)² = 1 / (8π√μ).
double green_l2_bound(double mu);

struct PointwiseReport {
  double min_value;            // over all nodes
  double worst_rel_violation;  // max (G - bound)/bound over checked nodes
  Index3 worst_node;
  int checked_nodes;
  bool nonnegative;            // min_value >= -tol_neg
  bool pass;                   // nonnegative && worst_rel_violation <= tol_disc
};

inline constexpr double kGreenTolNeg = 1e-10;
/// Nodes closer to the source than this many spacings are not compared.
inline constexpr double kDefaultExclusionSpacings = 3.0;

PointwiseReport check_pointwise_bound(const GreenSolution& g, double tol_disc = 0.05,
                                      double exclusion_spacings = kDefaultExclusionSpacings);

struct L2Report {
  double l2_sq;
  double bound;
  double margin;  // 1 - l2_sq / bound
  bool pass;      // l2_sq <= (1 + tol_disc) bound
};

L2Report check_l2_bound(const GreenSolution& g, double tol_disc = 0.05);

/// Partial sums Σ_{n<=m} (φₙ(x₀)/(μ+λₙ))² for m = 0..pairs.size().
std::vector<double> parseval_partial_sums(const GreenSolution& g, std::span<const EigenPair> pairs);

struct RadialBin {
  double r;       // bin centre
  double mean_g;  // node average of G in the bin
  double fundamental;
  int count;
};

/// Node-averaged G in shells of width `bin_width` around the source.
std::vector<RadialBin> radial_profile(const GreenSolution& g, double bin_width);

}  // namespace sharpbound
