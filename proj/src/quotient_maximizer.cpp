// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/quotient_maximizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sharpbound/error.hpp"

namespace sharpbound {

double sharp_quotient_bound() { return 1.0 / (2.0 * std::numbers::pi); }

double quotient(const ScalarField& u, Index3 x0) {
  const int node = u.domain()->require_interior(x0);
  const double g = grad_norm_sq(u);
  if (!(g > 0.0)) throw DomainError("quotient of the zero field");
  const double lap = l2_norm(laplacian(u));
  const double v = u[node];
  return v * v / (std::sqrt(g) * lap);
}

double sup_quotient(const ScalarField& u) {
  return quotient(u, u.domain()->node(argmax_abs(u)));
}

double sup_quotient(const VectorField3& u) {
  const double g = grad_norm_sq(u);
  if (!(g > 0.0)) throw DomainError("quotient of the zero field");
  const double lap = std::sqrt(l2_norm_sq(laplacian(u)));
  const double s = sup_norm(u);
  return s * s / (std::sqrt(g) * lap);
}

namespace {

void check_spectrum(std::span<const double> lambdas, std::span<const double> values) {
  if (lambdas.empty()) throw DomainError("empty eigen-span");
  if (lambdas.size() != values.size())
    throw DomainError("eigenvalue and point-value counts differ");
  for (double l : lambdas)
    if (!(l > 0.0)) throw DomainError("eigenvalues must be positive");
  if (std::all_of(values.begin(), values.end(), [](double a) { return a == 0.0; }))
    throw DomainError("every eigenfunction vanishes at x0; the quotient is identically zero");
}

double norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void normalize(std::vector<double>& c) {
  const double n = norm(c);
  for (double& x : c) x /= n;
}

// Stationary coefficients for a given μ; unit length, positive u(x₀).
std::vector<double> stationary_coeffs(std::span<const double> lambdas,
                                      std::span<const double> values, double mu) {
  std::vector<double> c(lambdas.size());
  for (std::size_t n = 0; n < c.size(); ++n)
    c[n] = values[n] / (lambdas[n] * (mu + lambdas[n]));
  normalize(c);
  return c;
}

// One application of μ ↦ Σλ²c²/Σλc² with c = c(μ).
double fixed_point_map(std::span<const double> lambdas, std::span<const double> values,
                       double mu) {
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    const double w = values[n] * values[n] / ((mu + lambdas[n]) * (mu + lambdas[n]));
    num += w;
    den += w / lambdas[n];
  }
  return num / den;
}

}  // namespace

double spectral_quotient(std::span<const double> lambdas, std::span<const double> values,
                         std::span<const double> coeffs) {
  double s = 0.0, a = 0.0, b = 0.0;
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    s += coeffs[n] * values[n];
    a += lambdas[n] * coeffs[n] * coeffs[n];
    b += lambdas[n] * lambdas[n] * coeffs[n] * coeffs[n];
  }
  return s * s / (std::sqrt(a) * std::sqrt(b));
}

std::vector<double> spectral_quotient_tangent_gradient(std::span<const double> lambdas,
                                                       std::span<const double> values,
                                                       std::span<const double> coeffs) {
  double s = 0.0, a = 0.0, b = 0.0, cc = 0.0;
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    s += coeffs[n] * values[n];
    a += lambdas[n] * coeffs[n] * coeffs[n];
    b += lambdas[n] * lambdas[n] * coeffs[n] * coeffs[n];
    cc += coeffs[n] * coeffs[n];
  }
  const double q = s * s / (std::sqrt(a) * std::sqrt(b));
  std::vector<double> g(lambdas.size());
  double radial = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    g[n] = q * (2.0 * values[n] / s - lambdas[n] * coeffs[n] / a -
                lambdas[n] * lambdas[n] * coeffs[n] / b);
    radial += g[n] * coeffs[n];
  }
  for (std::size_t n = 0; n < g.size(); ++n) g[n] -= radial / cc * coeffs[n];
  return g;
}

double closed_form_maximum(std::span<const double> lambdas, std::span<const double> values,
                           double mu) {
  double sum = 0.0;
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    const double t = values[n] / (mu + lambdas[n]);
    sum += t * t;
  }
  return 4.0 * std::sqrt(mu) * sum;
}

QuotientResult maximize_spectral(std::span<const double> lambdas, std::span<const double> values,
                                 const FixedPointOptions& options) {
  check_spectrum(lambdas, values);
  const auto [lo_it, hi_it] = std::minmax_element(lambdas.begin(), lambdas.end());
  const double lo = *lo_it, hi = *hi_it;

  // Starts spread geometrically over [λmin, λmax]; distinct stationary
  // points can exist and only the best one is the maximum.
  constexpr int kStarts = 5;
  QuotientResult best;
  best.q_max = -1.0;
  bool any_converged = false;
  double last_mu = lo;
  int total_iterations = 0;

  for (int s = 0; s < kStarts; ++s) {
    double mu = lo * std::pow(hi / lo, static_cast<double>(s) / (kStarts - 1));
    double damping = 1.0;
    double prev_step = 0.0;
    bool converged = false;
    for (int it = 0; it < options.max_iter; ++it) {
      ++total_iterations;
      const double step = damping * (fixed_point_map(lambdas, values, mu) - mu);
      if (prev_step != 0.0 && step * prev_step < 0.0 && std::abs(step) > 0.5 * std::abs(prev_step))
        damping *= 0.5;  // oscillation
      const double next = mu + step;
      prev_step = step;
      const bool done = std::abs(next - mu) <= options.rel_tol * mu;
      mu = next;
      if (done) {
        converged = true;
        break;
      }
    }
    last_mu = mu;
    if (!converged) continue;
    any_converged = true;
    auto c = stationary_coeffs(lambdas, values, mu);
    const double q = spectral_quotient(lambdas, values, c);
    if (q > best.q_max) {
      best.mu = mu;
      best.coeffs = std::move(c);
      best.q_max = q;
    }
  }
  if (!any_converged)
    throw ConvergenceError("mu fixed point did not converge, last iterate " + std::to_string(last_mu),
                           last_mu, total_iterations);
  best.m = static_cast<int>(lambdas.size());
  best.iterations = total_iterations;
  return best;
}

std::vector<double> point_values(std::span<const EigenPair> pairs, Index3 x0) {
  if (pairs.empty()) throw DomainError("empty eigen-span");
  const int node = pairs.front().phi.domain()->require_interior(x0);
  std::vector<double> a;
  a.reserve(pairs.size());
  for (const auto& p : pairs) a.push_back(p.phi[node]);
  return a;
}

std::vector<double> eigenvalues(std::span<const EigenPair> pairs) {
  std::vector<double> l;
  l.reserve(pairs.size());
  for (const auto& p : pairs) l.push_back(p.lambda);
  return l;
}

QuotientResult maximize_over_span(std::span<const EigenPair> pairs, Index3 x0,
                                  const FixedPointOptions& options) {
  const auto a = point_values(pairs, x0);
  const auto l = eigenvalues(pairs);
  QuotientResult r = maximize_spectral(l, a, options);
  r.point = x0;
  return r;
}

QuotientResult brute_force_spectral(std::span<const double> lambdas,
                                    std::span<const double> values,
                                    const BruteForceOptions& options) {
  check_spectrum(lambdas, values);
  const std::size_t m = lambdas.size();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> normal;

  QuotientResult best;
  best.q_max = -1.0;
  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<double> c(m);
    for (double& x : c) x = normal(rng);
    normalize(c);
    double q = spectral_quotient(lambdas, values, c);
    double step = 0.1;
    int steps = 0;
    for (; steps < options.max_steps && step > 1e-14; ++steps) {
      auto g = spectral_quotient_tangent_gradient(lambdas, values, c);
      const double gn = norm(g);
      if (gn == 0.0) break;
      std::vector<double> trial(m);
      for (std::size_t n = 0; n < m; ++n) trial[n] = c[n] + step * g[n] / gn;
      normalize(trial);
      const double qt = spectral_quotient(lambdas, values, trial);
      if (qt > q) {
        c = std::move(trial);
        q = qt;
        step *= 1.5;
      } else {
        step *= 0.5;
      }
    }
    best.iterations += steps;
    if (q > best.q_max) {
      best.q_max = q;
      best.coeffs = c;
    }
  }

  double s = 0.0, a = 0.0, b = 0.0;
  for (std::size_t n = 0; n < m; ++n) {
    s += best.coeffs[n] * values[n];
    a += lambdas[n] * best.coeffs[n] * best.coeffs[n];
    b += lambdas[n] * lambdas[n] * best.coeffs[n] * best.coeffs[n];
  }
  if (s < 0.0)
    for (double& x : best.coeffs) x = -x;
  best.mu = b / a;
  best.m = static_cast<int>(m);
  return best;
}

QuotientResult brute_force_maximize(std::span<const EigenPair> pairs, Index3 x0,
                                    const BruteForceOptions& options) {
  const auto a = point_values(pairs, x0);
  const auto l = eigenvalues(pairs);
  QuotientResult r = brute_force_spectral(l, a, options);
  r.point = x0;
  return r;
}

ScalarField synthesize(std::span<const EigenPair> pairs, std::span<const double> coeffs) {
  if (pairs.empty() || pairs.size() != coeffs.size())
    throw DomainError("coefficient count does not match eigen-span");
  ScalarField u(pairs.front().phi.domain());
  for (std::size_t n = 0; n < pairs.size(); ++n) u.axpy(coeffs[n], pairs[n].phi);
  return u;
}

ChainReport step2_chain_check(std::span<const EigenPair> pairs, Index3 x0,
                              const ScalarField& green, double mu) {
  const auto a = point_values(pairs, x0);
  const auto l = eigenvalues(pairs);
  ChainReport report{};
  report.q_max = maximize_spectral(l, a).q_max;
  report.eigen_sum = closed_form_maximum(l, a, mu);
  report.green_term = 4.0 * std::sqrt(mu) * l2_norm_sq(green);
  report.sharp = sharp_quotient_bound();
  return report;
}

}  // namespace sharpbound
