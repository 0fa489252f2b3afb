// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/helmholtz_green.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sharpbound/error.hpp"

namespace sharpbound {

GreenSolution solve_green(const DomainPtr& domain, Index3 x0, double mu,
                          const CgOptions& options) {
  const int src = domain->require_interior(x0);
  if (!(mu > 0.0)) throw DomainError("Helmholtz parameter mu must be positive");
  const double h = domain->spacing();
  const std::size_t n = domain->interior_count();

  std::vector<double> b(n, 0.0);
  b[static_cast<std::size_t>(src)] = 1.0 / (h * h * h);
  std::vector<double> x(n, 0.0);
  const VoxelDomain& d = *domain;
  const auto apply = [&d, mu](std::span<const double> in, std::span<double> out) {
    apply_laplacian(d, in, out);
    for (std::size_t a = 0; a < in.size(); ++a) out[a] = mu * in[a] - out[a];
  };
  const CgResult cg = conjugate_gradient(apply, b, x, options);
  if (cg.rel_residual > std::max(options.rel_tol * 10.0, 1e-10))
    throw ConvergenceError("Green function CG solve failed", cg.rel_residual, cg.iterations);

  ScalarField field(domain, std::move(x));
  const double l2 = l2_norm_sq(field);
  return {std::move(field), x0, mu, l2, cg.iterations, cg.rel_residual};
}

double fundamental_solution(double r, double mu) {
  return std::exp(-std::sqrt(mu) * r) / (4.0 * std::numbers::pi * r);
}

double green_l2_bound(double mu) { return 1.0 / (8.0 * std::numbers::pi * std::sqrt(mu)); }

PointwiseReport check_pointwise_bound(const GreenSolution& g, double tol_disc,
                                      double exclusion_spacings) {
  const VoxelDomain& d = *g.field.domain();
  const auto c = d.position(g.source);
  const double r_min = exclusion_spacings * d.spacing() * (1.0 - 1e-12);
  PointwiseReport report{std::numeric_limits<double>::infinity(),
                         -std::numeric_limits<double>::infinity(), g.source, 0, false, false};
  for (std::size_t a = 0; a < d.interior_count(); ++a) {
    const double v = g.field[static_cast<int>(a)];
    report.min_value = std::min(report.min_value, v);
    const auto x = d.position(static_cast<int>(a));
    const double r = std::hypot(x[0] - c[0], x[1] - c[1], x[2] - c[2]);
    if (r < r_min) continue;
    const double bound = fundamental_solution(r, g.mu);
    const double rel = (v - bound) / bound;
    ++report.checked_nodes;
    if (rel > report.worst_rel_violation) {
      report.worst_rel_violation = rel;
      report.worst_node = d.node(static_cast<int>(a));
    }
  }
  report.nonnegative = report.min_value >= -kGreenTolNeg;
  report.pass = report.nonnegative && report.worst_rel_violation <= tol_disc;
  return report;
}

L2Report check_l2_bound(const GreenSolution& g, double tol_disc) {
  const double bound = green_l2_bound(g.mu);
  return {g.l2_sq, bound, 1.0 - g.l2_sq / bound, g.l2_sq <= (1.0 + tol_disc) * bound};
}

std::vector<double> parseval_partial_sums(const GreenSolution& g,
                                          std::span<const EigenPair> pairs) {
  std::vector<double> sums(pairs.size() + 1, 0.0);
  if (pairs.empty()) return sums;
  const int src = g.field.domain()->require_interior(g.source);
  for (std::size_t n = 0; n < pairs.size(); ++n) {
    if (!pairs[n].phi.same_domain(g.field))
      throw DomainError("eigenpairs and Green function live on different domains");
    const double t = pairs[n].phi[src] / (g.mu + pairs[n].lambda);
    sums[n + 1] = sums[n] + t * t;
  }
  return sums;
}

std::vector<RadialBin> radial_profile(const GreenSolution& g, double bin_width) {
  if (!(bin_width > 0.0)) throw DomainError("bin width must be positive");
  const VoxelDomain& d = *g.field.domain();
  const auto c = d.position(g.source);
  std::vector<double> sum;
  std::vector<int> count;
  for (std::size_t a = 0; a < d.interior_count(); ++a) {
    const auto x = d.position(static_cast<int>(a));
    const double r = std::hypot(x[0] - c[0], x[1] - c[1], x[2] - c[2]);
    const auto bin = static_cast<std::size_t>(std::floor(r / bin_width + 0.5));
    if (bin >= sum.size()) {
      sum.resize(bin + 1, 0.0);
      count.resize(bin + 1, 0);
    }
    sum[bin] += g.field[static_cast<int>(a)];
    ++count[bin];
  }
  std::vector<RadialBin> bins;
  for (std::size_t b = 0; b < sum.size(); ++b) {
    if (count[b] == 0) continue;
    const double r = static_cast<double>(b) * bin_width;
    bins.push_back({r, sum[b] / count[b],
                    r > 0.0 ? fundamental_solution(r, g.mu)
                            : std::numeric_limits<double>::infinity(),
                    count[b]});
  }
  return bins;
}

}  // namespace sharpbound
