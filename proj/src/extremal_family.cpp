// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/extremal_family.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sharpbound/error.hpp"

namespace sharpbound {

double extremal_value(double r) {
  if (r < 1e-4) return 1.0 - r / 2.0 + r * r / 6.0 - r * r * r / 24.0;
  return -std::expm1(-r) / r;
}

double extremal_derivative(double r) {
  // (e^{-r}(1+r) - 1)/r² = Σ_{j>=2} (-1)^j (1-j)/j! r^{j-2}
  if (r < 1e-2) {
    double sum = 0.0, power = 1.0, fact = 2.0;
    for (int j = 2; j <= 9; ++j) {
      if (j > 2) {
        power *= r;
        fact *= j;
      }
      sum += ((j % 2 == 0) ? 1.0 : -1.0) * (1.0 - j) / fact * power;
    }
    return sum;
  }
  return (std::exp(-r) * (1.0 + r) - 1.0) / (r * r);
}

double extremal_laplacian(double r) { return -std::exp(-r) / r; }

double cutoff_bump(double t) {
  if (t <= 0.5) return 1.0;
  if (t >= 1.0) return 0.0;
  const double s = 2.0 * t - 1.0;
  return 1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

double cutoff_bump_derivative(double t) {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  const double s = 2.0 * t - 1.0;
  return -2.0 * 30.0 * s * s * (1.0 - s) * (1.0 - s);
}

double cutoff_bump_second_derivative(double t) {
  if (t <= 0.5 || t >= 1.0) return 0.0;
  const double s = 2.0 * t - 1.0;
  return -4.0 * 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s);
}

std::optional<double> RadialProfile::support_radius() const {
  if (!cutoff_radius) return std::nullopt;
  return *cutoff_radius * scale;
}

namespace {

// Unscaled profile v(ρ), v'(ρ) and ρ·Δv(ρ) (finite at ρ = 0).
struct Jet {
  double value;
  double derivative;
  double r_laplacian;
};

Jet extremal_jet(double rho, std::optional<double> cutoff) {
  const double u = extremal_value(rho);
  const double du = extremal_derivative(rho);
  const double r_lap = -std::exp(-rho);
  if (!cutoff) return {u, du, r_lap};
  const double R = *cutoff;
  const double t = rho / R;
  if (t >= 1.0) return {0.0, 0.0, 0.0};
  const double psi = cutoff_bump(t);
  const double dpsi = cutoff_bump_derivative(t) / R;
  const double ddpsi = cutoff_bump_second_derivative(t) / (R * R);
  return {u * psi, du * psi + u * dpsi,
          r_lap * psi + rho * (2.0 * du * dpsi + u * ddpsi) + 2.0 * u * dpsi};
}

std::vector<double> uniform_nodes(double r_max, std::size_t samples) {
  if (samples < 4) throw DomainError("profile needs at least 4 samples");
  std::vector<double> r(samples);
  for (std::size_t i = 0; i < samples; ++i)
    r[i] = r_max * static_cast<double>(i) / static_cast<double>(samples - 1);
  return r;
}

void fill_samples(RadialProfile& p) {
  p.values.resize(p.r_nodes.size());
  for (std::size_t i = 0; i < p.r_nodes.size(); ++i) p.values[i] = profile_value(p, p.r_nodes[i]);
}

// Composite Simpson on uniform nodes; trapezoid on a leftover interval.
double simpson(const std::vector<double>& f, double dr) {
  const std::size_t n = f.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  const std::size_t even = intervals - intervals % 2;
  double sum = 0.0;
  for (std::size_t i = 0; i + 2 <= even; i += 2) sum += f[i] + 4.0 * f[i + 1] + f[i + 2];
  sum *= dr / 3.0;
  if (even != intervals) sum += 0.5 * dr * (f[n - 2] + f[n - 1]);
  return sum;
}

}  // namespace

RadialProfile extremal_profile(double r_max, std::size_t samples) {
  if (!(r_max > 0.0)) throw DomainError("r_max must be positive");
  RadialProfile p;
  p.kind = ProfileKind::Extremal;
  p.r_nodes = uniform_nodes(r_max, samples);
  fill_samples(p);
  return p;
}

RadialProfile cutoff_sequence(double R, std::size_t samples) {
  if (!(R >= 4.0)) throw DomainError("cutoff radius must be at least 4");
  RadialProfile p;
  p.kind = ProfileKind::Extremal;
  p.cutoff_radius = R;
  p.r_nodes = uniform_nodes(R, samples);
  fill_samples(p);
  return p;
}

RadialProfile rescaled(RadialProfile profile, double s) {
  if (!(s > 0.0)) throw DomainError("scale must be positive");
  if (profile.kind != ProfileKind::Extremal)
    throw DomainError("only closed-form profiles can be rescaled");
  profile.scale *= s;
  for (double& r : profile.r_nodes) r *= s;
  fill_samples(profile);
  return profile;
}

RadialProfile sampled_profile(std::vector<double> r_nodes, std::vector<double> values) {
  if (r_nodes.size() != values.size() || r_nodes.size() < 4)
    throw DomainError("sampled profile needs matching r/value arrays of length >= 4");
  if (r_nodes.front() != 0.0) throw DomainError("sampled profile must start at r = 0");
  const double dr = r_nodes[1] - r_nodes[0];
  for (std::size_t i = 1; i < r_nodes.size(); ++i)
    if (std::abs(r_nodes[i] - r_nodes[i - 1] - dr) > 1e-9 * dr)
      throw DomainError("sampled profile must be uniformly spaced");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("profile values must be finite");
  RadialProfile p;
  p.r_nodes = std::move(r_nodes);
  p.values = std::move(values);
  return p;
}

double profile_value(const RadialProfile& p, double r) {
  if (p.kind == ProfileKind::Extremal) return extremal_jet(r / p.scale, p.cutoff_radius).value;
  if (r >= p.r_max()) return r == p.r_max() ? p.values.back() : 0.0;
  const double dr = p.r_nodes[1] - p.r_nodes[0];
  const auto i = static_cast<std::size_t>(r / dr);
  const double w = r / dr - static_cast<double>(i);
  return (1.0 - w) * p.values[i] + w * p.values[i + 1];
}

double RadialIntegrals::quotient() const {
  if (grad_sq <= 0.0 || lap_sq <= 0.0) return 0.0;
  return sup * sup / (std::sqrt(grad_sq) * std::sqrt(lap_sq));
}

RadialIntegrals radial_integrals(const RadialProfile& p, double tol) {
  if (p.kind == ProfileKind::Sampled) return radial_integrals_finite_difference(p);

  // Integrate the unscaled profile; f(r) = g(r/s) has grad_sq(f) = s grad_sq(g)
  // and lap_sq(f) = lap_sq(g)/s, so the scale enters only at the end.
  const double s = p.scale;
  const auto cutoff = p.cutoff_radius;
  const auto grad_integrand = [&](double r) {
    const double d = extremal_jet(r, cutoff).derivative * r;
    return d * d;
  };
  const auto lap_integrand = [&](double r) {
    const double v = extremal_jet(r, cutoff).r_laplacian;
    return v * v;
  };

  // Breakpoints where the integrand changes character.
  std::vector<double> cuts{0.0, 1.0, 5.0};
  const double end = cutoff ? *cutoff : p.r_max() / s;
  if (cutoff) cuts.push_back(*cutoff / 2.0);
  cuts.push_back(end);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [&](double c) { return c > end; }),
             cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (!cutoff) cuts.push_back(std::numeric_limits<double>::infinity());

  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  double grad = 0.0, lap = 0.0, err_total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double err = 0.0;
    grad += Quad::integrate(grad_integrand, cuts[i], cuts[i + 1], 20, 1e-13, &err);
    err_total += err;
    lap += Quad::integrate(lap_integrand, cuts[i], cuts[i + 1], 20, 1e-13, &err);
    err_total += err;
  }
  const double g_sq = 4.0 * std::numbers::pi * grad;
  const double l_sq = 4.0 * std::numbers::pi * lap;
  if (4.0 * std::numbers::pi * err_total > tol * std::max(1.0, g_sq + l_sq))
    throw std::runtime_error("radial quadrature missed its tolerance");
  RadialIntegrals out;
  out.grad_sq = s * g_sq;
  out.lap_sq = l_sq / s;
  out.sup = std::abs(profile_value(p, 0.0));
  for (double v : p.values) out.sup = std::max(out.sup, std::abs(v));
  return out;
}

RadialIntegrals radial_integrals_finite_difference(const RadialProfile& p) {
  const std::size_t n = p.r_nodes.size();
  RadialIntegrals out;
  if (n < 4) return out;
  const double dr = p.r_nodes[1] - p.r_nodes[0];
  const auto& f = p.values;

  std::vector<double> grad(n), lap(n), g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = p.r_nodes[i] * f[i];
  for (std::size_t i = 0; i < n; ++i) {
    double df, ddg;
    if (i == 0) {
      df = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dr);
      ddg = (2.0 * g[0] - 5.0 * g[1] + 4.0 * g[2] - g[3]) / (dr * dr);
    } else if (i == n - 1) {
      df = (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * dr);
      ddg = (2.0 * g[i] - 5.0 * g[i - 1] + 4.0 * g[i - 2] - g[i - 3]) / (dr * dr);
    } else {
      df = (f[i + 1] - f[i - 1]) / (2.0 * dr);
      ddg = (g[i + 1] - 2.0 * g[i] + g[i - 1]) / (dr * dr);
    }
    grad[i] = df * p.r_nodes[i] * df * p.r_nodes[i];
    lap[i] = ddg * ddg;  // (r Δf)² = ((r f)'')²
  }
  out.grad_sq = 4.0 * std::numbers::pi * simpson(grad, dr);
  out.lap_sq = 4.0 * std::numbers::pi * simpson(lap, dr);
  for (double v : f) out.sup = std::max(out.sup, std::abs(v));
  return out;
}

Index3 embedding_center(const VoxelDomain& domain) { return domain.node(domain.deepest_node()); }

double inscribed_radius(const VoxelDomain& domain, Index3 center) {
  const auto c = domain.position(center);
  const auto mask = domain.mask();
  const auto& dims = domain.dims();
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < dims[0]; ++i)
    for (int j = 0; j < dims[1]; ++j)
      for (int k = 0; k < dims[2]; ++k) {
        if (mask[domain.flat({i, j, k})]) continue;
        const auto x = domain.position(Index3{i, j, k});
        best = std::min(best, std::hypot(x[0] - c[0], x[1] - c[1], x[2] - c[2]));
      }
  return best;
}

ScalarField embed_in_domain(const RadialProfile& profile, const DomainPtr& domain) {
  const auto support = profile.support_radius();
  if (!support) throw DomainError("only compactly supported (cut) profiles can be embedded");
  const Index3 center = embedding_center(*domain);
  const double rho = inscribed_radius(*domain, center);
  if (rho < 3.0 * domain->spacing() * (1.0 - 1e-12))
    throw DomainError("domain has no inscribed ball of radius 3h");
  const double stretch = *support / rho;  // profile units per physical length
  const auto c = domain->position(center);
  return sample(domain, [&](double x, double y, double z) {
    const double r = std::hypot(x - c[0], y - c[1], z - c[2]) * stretch;
    return r >= *support ? 0.0 : profile_value(profile, r);
  });
}

}  // namespace sharpbound
