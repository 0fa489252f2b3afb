// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <span>

namespace sharpbound {

struct CgOptions {
  double rel_tol = 1e-12;
  int max_iter = 20000;
};

struct CgResult {
  int iterations = 0;
  /// ||b - A x|| / ||b||, recomputed from scratch at exit.
  double rel_residual = 0.0;
  bool converged = false;
};

using LinearOperator = std::function<void(std::span<const double>, std::span<double>)>;

/// Conjugate gradients for a symmetric positive definite operator. `x` holds
/// the initial guess on entry and the solution on exit.
CgResult conjugate_gradient(const LinearOperator& apply, std::span<const double> b,
                            std::span<double> x, const CgOptions& options = {});

}  // namespace sharpbound
