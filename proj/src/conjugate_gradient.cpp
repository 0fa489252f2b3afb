// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/conjugate_gradient.hpp"

#include <cmath>
#include <vector>

namespace sharpbound {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += a[n] * b[n];
  return s;
}

}  // namespace

CgResult conjugate_gradient(const LinearOperator& apply, std::span<const double> b,
                            std::span<double> x, const CgOptions& options) {
  const std::size_t n = b.size();
  std::vector<double> r(n), p(n), q(n);
  CgResult result;

  const double b_norm = std::sqrt(dot(b, b));
  if (b_norm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    result.converged = true;
    return result;
  }

  apply(x, q);
  for (std::size_t a = 0; a < n; ++a) r[a] = b[a] - q[a];
  p = r;
  double rr = dot(r, r);
  const double target = options.rel_tol * b_norm;

  while (std::sqrt(rr) > target && result.iterations < options.max_iter) {
    apply(p, q);
    const double alpha = rr / dot(p, q);
    for (std::size_t a = 0; a < n; ++a) {
      x[a] += alpha * p[a];
      r[a] -= alpha * q[a];
    }
    const double rr_new = dot(r, r);
    const double beta = rr_new / rr;
    rr = rr_new;
    for (std::size_t a = 0; a < n; ++a) p[a] = r[a] + beta * p[a];
    ++result.iterations;
  }

  // The recursive residual drifts; report the true one.
  apply(x, q);
  for (std::size_t a = 0; a < n; ++a) r[a] = b[a] - q[a];
  result.rel_residual = std::sqrt(dot(r, r)) / b_norm;
  result.converged = result.rel_residual <= 10.0 * options.rel_tol;
  return result;
}

}  // namespace sharpbound
