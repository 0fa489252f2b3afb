// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sharpbound/error.hpp"

namespace sharpbound {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

// Y = -Δ_h X, column by column.
void apply_block(const VoxelDomain& domain, const MatrixXd& X, MatrixXd& Y) {
  const Eigen::Index n = X.rows();
  Y.resize(n, X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    std::span<const double> in(X.col(j).data(), static_cast<std::size_t>(n));
    std::span<double> out(Y.col(j).data(), static_cast<std::size_t>(n));
    apply_laplacian(domain, in, out);
  }
  Y = -Y;
}

MatrixXd orthonormalize(const MatrixXd& X) {
  Eigen::HouseholderQR<MatrixXd> qr(X);
  return qr.householderQ() * MatrixXd::Identity(X.rows(), X.cols());
}

// Rotates X (and AX) onto Ritz vectors; returns Ritz values ascending.
VectorXd rayleigh_ritz(MatrixXd& X, MatrixXd& AX) {
  MatrixXd H = X.transpose() * AX;
  H = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
  X = X * es.eigenvectors();
  AX = AX * es.eigenvectors();
  return es.eigenvalues();
}

// Scaled Chebyshev filter damping [a, b] and normalized so p(a0) = 1.
MatrixXd chebyshev_filter(const VoxelDomain& domain, const MatrixXd& X, int degree, double a,
                          double b, double a0) {
  const double e = 0.5 * (b - a);
  const double c = 0.5 * (b + a);
  double sigma = e / (a0 - c);
  const double tau = 2.0 / sigma;

  MatrixXd AX;
  apply_block(domain, X, AX);
  MatrixXd prev = X;
  MatrixXd cur = (AX - c * X) * (sigma / e);
  for (int i = 2; i <= degree; ++i) {
    const double sigma_next = 1.0 / (tau - sigma);
    apply_block(domain, cur, AX);
    MatrixXd next = (AX - c * cur) * (2.0 * sigma_next / e) - (sigma * sigma_next) * prev;
    prev = std::move(cur);
    cur = std::move(next);
    sigma = sigma_next;
  }
  return cur;
}

std::vector<EigenPair> to_pairs(const DomainPtr& domain, const VectorXd& lambdas,
                                const MatrixXd& vectors, int m) {
  const double h = domain->spacing();
  const double scale = 1.0 / std::sqrt(h * h * h);
  std::vector<EigenPair> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    std::vector<double> v(static_cast<std::size_t>(vectors.rows()));
    Eigen::Index peak = 0;
    vectors.col(j).cwiseAbs().maxCoeff(&peak);
    const double sign = vectors(peak, j) < 0.0 ? -1.0 : 1.0;
    for (Eigen::Index a = 0; a < vectors.rows(); ++a) v[a] = sign * scale * vectors(a, j);
    pairs.push_back({lambdas[j], ScalarField(domain, std::move(v))});
  }

  // Explicit modified Gram-Schmidt in L²; keeps numerically degenerate
  // clusters orthonormal regardless of how the rotation inside them landed.
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i)
      pairs[j].phi.axpy(-l2_inner(pairs[i].phi, pairs[j].phi), pairs[i].phi);
    pairs[j].phi *= 1.0 / l2_norm(pairs[j].phi);
  }
  return pairs;
}

MatrixXd dense_operator(const VoxelDomain& domain) {
  const auto n = static_cast<Eigen::Index>(domain.interior_count());
  const double inv_h2 = 1.0 / (domain.spacing() * domain.spacing());
  MatrixXd A = MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    A(a, a) = 6.0 * inv_h2;
    for (int b : domain.neighbors(static_cast<int>(a)))
      if (b != kNoNeighbor) A(a, b) = -inv_h2;
  }
  return A;
}

std::vector<EigenPair> dense_pairs(const DomainPtr& domain, int m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(dense_operator(*domain));
  if (es.info() != Eigen::Success) throw ConvergenceError("dense eigensolver failed", 0.0, 0);
  return to_pairs(domain, es.eigenvalues(), es.eigenvectors(), m);
}

}  // namespace

std::vector<EigenPair> compute_eigenpairs(const DomainPtr& domain, int m,
                                          const EigenOptions& options) {
  const auto n = static_cast<int>(domain->interior_count());
  if (m < 1 || m > n)
    throw DomainError("requested " + std::to_string(m) + " eigenpairs on a domain with " +
                      std::to_string(n) + " interior nodes");
  if (domain->interior_count() <= options.dense_threshold) return dense_pairs(domain, m);

  const int k = std::min(n, m + std::max(options.guard, 1));
  const double h = domain->spacing();
  const double upper = 12.0 / (h * h);  // Gershgorin bound for -Δ_h

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;
  MatrixXd X(n, k);
  for (Eigen::Index j = 0; j < X.cols(); ++j)
    for (Eigen::Index a = 0; a < X.rows(); ++a) X(a, j) = normal(rng);
  X = orthonormalize(X);

  MatrixXd AX;
  apply_block(*domain, X, AX);
  VectorXd theta = rayleigh_ritz(X, AX);

  double worst = 0.0, best_worst = std::numeric_limits<double>::infinity();
  int since_improved = 0, iter = 0;
  for (;; ++iter) {
    worst = 0.0;
    for (int j = 0; j < m; ++j)
      worst = std::max(worst, (AX.col(j) - theta[j] * X.col(j)).norm() / theta[j]);
    if (worst <= options.target_resid) break;
    if (worst < 0.5 * best_worst) {
      best_worst = worst;
      since_improved = 0;
    } else if (++since_improved >= 6 && worst <= options.tol_resid) {
      break;  // stagnated at rounding level, contract already met
    }
    if (iter >= options.max_iter) break;

    const double a = theta[k - 1];
    const double a0 = theta[0];
    X = orthonormalize(chebyshev_filter(*domain, X, options.filter_degree, a, upper, a0));
    apply_block(*domain, X, AX);
    theta = rayleigh_ritz(X, AX);
  }
  if (worst > options.tol_resid)
    throw ConvergenceError("eigensolver did not converge", worst, iter);

  return to_pairs(domain, theta, X, m);
}

std::vector<EigenPair> compute_full_spectrum(const DomainPtr& domain) {
  if (domain->interior_count() > 4000)
    throw DomainError("full spectrum is limited to 4000 interior nodes");
  return dense_pairs(domain, static_cast<int>(domain->interior_count()));
}

double eigen_residual(const EigenPair& pair) {
  ScalarField r = laplacian(pair.phi);
  r.axpy(pair.lambda, pair.phi);
  return l2_norm(r);
}

double rayleigh_quotient(const ScalarField& phi) { return grad_norm_sq(phi) / l2_norm_sq(phi); }

std::vector<EigenBoundRow> check_corollary2(std::span<const EigenPair> pairs, double tol_disc) {
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  std::vector<EigenBoundRow> rows;
  rows.reserve(pairs.size());
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    const double sup = sup_norm(pairs[n].phi);
    const double bound = std::pow(pairs[n].lambda, 0.75) * inv_sqrt_2pi;
    const double ratio = sup / bound;
    rows.push_back({static_cast<int>(n + 1), pairs[n].lambda, sup, bound, ratio,
                    ratio > 1.0 + tol_disc});
  }
  return rows;
}

}  // namespace sharpbound
