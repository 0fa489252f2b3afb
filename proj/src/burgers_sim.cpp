// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/burgers_sim.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "sharpbound/error.hpp"
#include "sharpbound/extremal_family.hpp"
#include "sharpbound/field_io.hpp"
#include "sharpbound/quotient_maximizer.hpp"

namespace sharpbound {

using std::numbers::pi;

double blowup_horizon(double y0, double nu) {
  if (!(y0 > 0.0) || !(nu > 0.0)) throw DomainError("horizon needs y0 > 0 and nu > 0");
  return 256.0 * pi * pi * nu * nu * nu / (27.0 * y0 * y0);
}

double young_absorbed_rate(double nu) {
  // ½y' + νd <= K y^{3/4} d^{3/4} with K = 1/√(2π). Young with exponents
  // (4, 4/3): ab <= a⁴/(4δ⁴) + ¾ δ^{4/3} b^{4/3}; picking ¾δ^{4/3} = ν
  // absorbs the dissipation and leaves ½y' <= K⁴y³/(4δ⁴) = C y³.
  const double k = 1.0 / std::sqrt(2.0 * pi);
  const double delta4 = std::pow(4.0 * nu / 3.0, 3.0);
  return std::pow(k, 4) / (4.0 * delta4);
}

double max_time_step(const BurgersState& state, double safety) {
  const double h = state.u.domain()->spacing();
  const double diffusive = h * h / (6.0 * state.nu);
  const double speed = sup_norm(state.u);
  const double advective = speed > 0.0 ? h / speed : std::numeric_limits<double>::infinity();
  return safety * std::min(diffusive, advective);
}

VectorField3 advection(const VectorField3& u) {
  const DomainPtr& domain = u.domain();
  const std::size_t n = domain->interior_count();
  VectorField3 out(domain);
  std::vector<double> deriv(n);
  for (int c = 0; c < 3; ++c) {
    auto dst = out[c].values();
    for (int axis = 0; axis < 3; ++axis) {
      apply_centered_difference(*domain, axis, u[c].values(), deriv);
      const auto vel = u[axis].values();
      for (std::size_t a = 0; a < n; ++a) dst[a] += vel[a] * deriv[a];
    }
  }
  return out;
}

BurgersState step(const BurgersState& state, double dt, const CgOptions& cg) {
  if (!(dt > 0.0)) throw DomainError("time step must be positive");
  const DomainPtr& domain = state.u.domain();
  const VoxelDomain& d = *domain;
  const VectorField3 adv = advection(state.u);
  const double k = state.nu * dt;
  const auto implicit = [&d, k](std::span<const double> in, std::span<double> out) {
    apply_laplacian(d, in, out);
    for (std::size_t a = 0; a < in.size(); ++a) out[a] = in[a] - k * out[a];
  };

  BurgersState next{VectorField3(domain), state.t + dt, state.nu};
  for (int c = 0; c < 3; ++c) {
    ScalarField rhs = state.u[c];
    rhs.axpy(-dt, adv[c]);
    next.u[c] = state.u[c];
    const CgResult res = conjugate_gradient(implicit, rhs.values(), next.u[c].values(), cg);
    if (!res.converged)
      throw ConvergenceError("implicit diffusion solve failed at t = " + std::to_string(state.t),
                             res.rel_residual, res.iterations);
    for (double v : next.u[c].values())
      if (!std::isfinite(v))
        throw std::runtime_error("non-finite velocity at t = " + std::to_string(next.t));
  }
  return next;
}

double energy_identity_residual(const BurgersState& before, const BurgersState& after) {
  const double dt = after.t - before.t;
  if (!(dt > 0.0)) throw DomainError("states must be consecutive in time");
  VectorField3 mid(before.u.domain());
  for (int c = 0; c < 3; ++c) {
    mid[c] = before.u[c];
    mid[c] += after.u[c];
    mid[c] *= 0.5;
  }
  const VectorField3 lap = laplacian(mid);
  const double d_half = l2_norm_sq(lap);
  if (d_half == 0.0) return 0.0;
  const VectorField3 adv = advection(mid);
  double nonlinear = 0.0;
  for (int c = 0; c < 3; ++c) nonlinear += l2_inner(adv[c], lap[c]);
  const double y0 = grad_norm_sq(before.u);
  const double y1 = grad_norm_sq(after.u);
  const double nu = before.nu;
  return ((y1 - y0) / (2.0 * dt) + nu * d_half - nonlinear) / (nu * d_half);
}

double energy_bound(double y0, double t, double T) { return y0 / std::sqrt(1.0 - t / T); }

double dissipation_bound(double y0, double nu, double t, double T) {
  const double ratio = t / T;
  return y0 / (2.0 * nu * (1.0 - std::pow(ratio, 1.0 / 6.0)) * std::sqrt(1.0 - std::sqrt(ratio)));
}

MonitorReport monitor_bounds(const BoundMonitor& traj, double slack) {
  MonitorReport report;
  report.pass = true;
  const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * pi);
  for (const auto& s : traj.samples) {
    if (s.t >= traj.T) throw DomainError("sample at t >= T: the bounds are undefined there");
    MonitorRow row{};
    row.t = s.t;
    row.energy_bound = energy_bound(traj.y0, s.t, traj.T);
    row.energy_margin = row.energy_bound - s.y;
    row.dissipation_bound = dissipation_bound(traj.y0, traj.nu, s.t, traj.T);
    row.dissipation_margin = row.dissipation_bound - s.dissipation;
    row.pointwise_bound = inv_sqrt_2pi * std::pow(s.y * s.d, 0.25);
    row.pointwise_margin = row.pointwise_bound - s.sup;

    report.worst_energy_ratio = std::max(report.worst_energy_ratio, s.y / row.energy_bound);
    report.worst_dissipation_ratio =
        std::max(report.worst_dissipation_ratio, s.dissipation / row.dissipation_bound);
    if (row.pointwise_bound > 0.0)
      report.worst_pointwise_ratio = std::max(report.worst_pointwise_ratio, s.sup / row.pointwise_bound);
    report.pass = report.pass && row.energy_margin >= -slack * row.energy_bound &&
                  row.dissipation_margin >= -slack * row.dissipation_bound &&
                  row.pointwise_margin >= -slack * row.pointwise_bound;
    report.rows.push_back(row);
  }
  return report;
}

double comparison_ode_oracle(double y0, double nu, double t, int steps) {
  const double T = blowup_horizon(y0, nu);
  if (t >= T) throw DomainError("comparison ODE is only defined before the horizon");
  if (t < 0.0) throw DomainError("time must be nonnegative");
  if (t == 0.0) return y0;
  const double c2 = 2.0 * young_absorbed_rate(nu);
  const auto f = [c2](double y) { return c2 * y * y * y; };
  const double h = t / steps;
  double y = y0;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(y);
    const double k2 = f(y + 0.5 * h * k1);
    const double k3 = f(y + 0.5 * h * k2);
    const double k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

BurgersRun simulate(const BurgersState& initial, const BurgersRunOptions& options) {
  if (!(options.t_end >= initial.t)) throw DomainError("t_end precedes the initial time");
  BurgersRun run{{}, initial, {}};
  BoundMonitor& mon = run.monitor;
  mon.nu = initial.nu;
  mon.y0 = grad_norm_sq(initial.u);
  mon.T = mon.y0 > 0.0 ? blowup_horizon(mon.y0, initial.nu) : std::numeric_limits<double>::infinity();

  const auto record = [&](const BurgersState& s, double dissipation, double residual) {
    const double y = grad_norm_sq(s.u);
    const double d = l2_norm_sq(laplacian(s.u));
    mon.samples.push_back({s.t, y, d, dissipation, sup_norm(s.u), residual});
    run.snapshot_quotients.push_back(y > 0.0 ? sup_quotient(s.u) : 0.0);
  };

  BurgersState state = initial;
  double d_prev = l2_norm_sq(laplacian(state.u));
  double dissipation = 0.0;
  record(state, 0.0, 0.0);
  const double t_eps = 1e-12 * std::max(1.0, options.t_end);
  for (int n = 1; state.t < options.t_end - t_eps; ++n) {
    double dt = options.dt > 0.0 ? options.dt : options.dt_fraction * max_time_step(state);
    if (!std::isfinite(dt)) dt = options.t_end - state.t;
    dt = std::min(dt, options.t_end - state.t);
    BurgersState next = step(state, dt, options.cg);
    const double residual = energy_identity_residual(state, next);
    const double d_next = l2_norm_sq(laplacian(next.u));
    dissipation += 0.5 * dt * (d_prev + d_next);
    d_prev = d_next;
    state = std::move(next);
    const bool last = state.t >= options.t_end - t_eps;
    if (n % std::max(options.sample_every, 1) == 0 || last) record(state, dissipation, residual);
  }
  run.final_state = std::move(state);
  return run;
}

VectorField3 make_initial_data(const DomainPtr& domain, BurgersFixture fixture, double y0) {
  if (!(y0 > 0.0)) throw DomainError("initial energy must be positive");
  const auto& dims = domain->dims();
  const double h = domain->spacing();
  const double lx = (dims[0] - 1) * h, ly = (dims[1] - 1) * h, lz = (dims[2] - 1) * h;
  const auto mode = [&](int a, int b, int c) {
    return sample(domain, [=](double x, double y, double z) {
      return std::sin(a * pi * x / lx) * std::sin(b * pi * y / ly) * std::sin(c * pi * z / lz);
    });
  };

  VectorField3 u(domain);
  switch (fixture) {
    case BurgersFixture::SineModes:
      u[0] = mode(1, 2, 1);
      u[1] = mode(2, 1, 1);
      u[1] *= -1.0;
      u[2] = mode(1, 1, 2);
      u[2].axpy(0.5, mode(1, 1, 1));
      break;
    case BurgersFixture::ExtremalBumps: {
      const ScalarField bump = embed_in_domain(cutoff_sequence(8.0, 4001), domain);
      u[0] = bump;
      u[1] = bump;
      u[1] *= -1.0;
      u[2] = bump;
      u[2] *= 0.5;
      break;
    }
    case BurgersFixture::SingleMode:
      u[0] = mode(1, 1, 1);
      break;
  }
  const double scale = std::sqrt(y0 / grad_norm_sq(u));
  for (int c = 0; c < 3; ++c) u[c] *= scale;
  return u;
}

void write_checkpoint(std::ostream& out, const BurgersState& state) {
  out.write(reinterpret_cast<const char*>(&state.t), sizeof(double));
  out.write(reinterpret_cast<const char*>(&state.nu), sizeof(double));
  for (int c = 0; c < 3; ++c) write_field_binary(out, state.u[c]);
}

BurgersState read_checkpoint(std::istream& in, const DomainPtr& domain) {
  BurgersState s{VectorField3(domain), 0.0, 0.0};
  if (!in.read(reinterpret_cast<char*>(&s.t), sizeof(double)) ||
      !in.read(reinterpret_cast<char*>(&s.nu), sizeof(double)))
    throw DomainError("truncated checkpoint header");
  for (int c = 0; c < 3; ++c) s.u[c] = read_field_binary(in, domain);
  return s;
}

}  // namespace sharpbound
