// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharpbound/eigensolver.hpp"
#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

/// 1/(2π): the sharp value of u(x₀)² / (‖∇u‖ ‖Δu‖).
double sharp_quotient_bound();

/// u(x₀)² / (‖∇u‖ ‖Δu‖) on the grid. Throws DomainError for a zero field.
double quotient(const ScalarField& u, Index3 x0);
/// Vector version: sup|u|² / (‖∇u‖ ‖Δu‖) with component-summed norms.
double sup_quotient(const VectorField3& u);
double sup_quotient(const ScalarField& u);

struct QuotientResult {
  double mu = 0.0;              // Σλ²c² / Σλc² at the maximizer
  std::vector<double> coeffs;   // unit Euclidean length, Σ c φ(x₀) > 0
  double q_max = 0.0;
  Index3 point{};
  int m = 0;
  int iterations = 0;
};

/// Eigen-span quotient in coefficient space:
/// (Σ cₙ aₙ)² / (√(Σ λₙ cₙ²) √(Σ λₙ² cₙ²)), with aₙ = φₙ(x₀).
double spectral_quotient(std::span<const double> lambdas, std::span<const double> values,
                         std::span<const double> coeffs);
/// Gradient of spectral_quotient with the radial component removed.
std::vector<double> spectral_quotient_tangent_gradient(std::span<const double> lambdas,
                                                       std::span<const double> values,
                                                       std::span<const double> coeffs);
/// 4√μ Σ (aₙ / (μ + λₙ))²
double closed_form_maximum(std::span<const double> lambdas, std::span<const double> values,
                           double mu);

struct FixedPointOptions {
  double rel_tol = 1e-12;
  int max_iter = 10000;
};

/// Maximizer over span{φ₁..φₘ} from eigenvalues and point values alone.
///
/// Stationarity forces cₙ ∝ aₙ / (λₙ(μ + λₙ)) with μ the self-consistent
/// ratio Σλ²c²/Σλc²; μ is found by fixed-point iteration, damped whenever
/// the iterates start to oscillate. Several starts spread over [λ₁, λₘ] are
/// run and the best stationary value is kept.
QuotientResult maximize_spectral(std::span<const double> lambdas, std::span<const double> values,
                                 const FixedPointOptions& options = {});
QuotientResult maximize_over_span(std::span<const EigenPair> pairs, Index3 x0,
                                  const FixedPointOptions& options = {});

struct BruteForceOptions {
  int restarts = 64;
  int max_steps = 20000;
  std::uint64_t seed = 0xB0DE;
};

/// Independent oracle: projected gradient ascent on the unit coefficient
/// sphere from random starts. Intended for m <= 8.
QuotientResult brute_force_spectral(std::span<const double> lambdas,
                                    std::span<const double> values,
                                    const BruteForceOptions& options = {});
QuotientResult brute_force_maximize(std::span<const EigenPair> pairs, Index3 x0,
                                    const BruteForceOptions& options = {});

/// Σ cₙ φₙ
ScalarField synthesize(std::span<const EigenPair> pairs, std::span<const double> coeffs);
/// φₙ(x₀) for every pair.
std::vector<double> point_values(std::span<const EigenPair> pairs, Index3 x0);
std::vector<double> eigenvalues(std::span<const EigenPair> pairs);

struct ChainReport {
  double q_max;
  double eigen_sum;   // 4√μ Σ_{n<=m} (φₙ(x₀)/(μ+λₙ))²
  double green_term;  // 4√μ ∫G²
  double sharp;       // 1/(2π)
  double gap_closed_form() const { return eigen_sum - q_max; }
  double gap_parseval() const { return green_term - eigen_sum; }
  double gap_sharp() const { return sharp - green_term; }
  bool holds(double tol) const {
    return gap_closed_form() >= -tol && gap_parseval() >= -tol && gap_sharp() >= -tol;
  }
};

/// q_max <= eigen-sum <= 4√μ∫G² <= 1/(2π), term by term. `green` must be
/// the Helmholtz Green function for source x₀ and parameter mu.
ChainReport step2_chain_check(std::span<const EigenPair> pairs, Index3 x0,
                              const ScalarField& green, double mu);

}  // namespace sharpbound
