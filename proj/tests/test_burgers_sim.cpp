// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sharpbound/burgers_sim.hpp"
#include "sharpbound/eigensolver.hpp"
#include "sharpbound/error.hpp"
#include "sharpbound/quotient_maximizer.hpp"

using namespace sharpbound;
using std::numbers::pi;

namespace {

DomainPtr unit_box(int n) {
  return VoxelDomain::build({ShapeTag::Box, {n, n, n}, 1.0 / (n - 1), std::nullopt});
}

// Initial energy that puts the horizon at T = 1 for viscosity nu.
double unit_horizon_energy(double nu) { return std::sqrt(256.0 * pi * pi * nu * nu * nu / 27.0); }

}  // namespace

TEST_CASE("horizon arithmetic") {
  CHECK(std::abs(blowup_horizon(2 * pi, 1.0) - 64.0 / 27.0) <= 1e-12);
  CHECK(blowup_horizon(3.0, 2.0) == doctest::Approx(8.0 * blowup_horizon(3.0, 1.0)).epsilon(1e-14));
  CHECK(blowup_horizon(6.0, 1.0) == doctest::Approx(0.25 * blowup_horizon(3.0, 1.0)).epsilon(1e-14));
  CHECK(blowup_horizon(unit_horizon_energy(0.7), 0.7) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(blowup_horizon(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(blowup_horizon(1.0, -1.0), DomainError);
}

TEST_CASE("Young-absorbed rate constant") {
  CHECK(young_absorbed_rate(1.0) == doctest::Approx(27.0 / (1024.0 * pi * pi)).epsilon(1e-14));
  CHECK(young_absorbed_rate(2.0) == doctest::Approx(27.0 / (8192.0 * pi * pi)).epsilon(1e-14));
  // y' = 2Cy³ blows up at 1/(4Cy0²), which must be the horizon.
  const double y0 = 3.3, nu = 0.8;
  CHECK(1.0 / (4.0 * young_absorbed_rate(nu) * y0 * y0) ==
        doctest::Approx(blowup_horizon(y0, nu)).epsilon(1e-14));
}

TEST_CASE("bound formulas at reference times") {
  const double y0 = 2.0, nu = 0.5, T = 3.0;
  CHECK(energy_bound(y0, 0.0, T) == y0);
  CHECK(energy_bound(y0, T / 2, T) == doctest::Approx(1.41421356 * y0).epsilon(1e-8));
  CHECK(dissipation_bound(y0, nu, 0.0, T) == doctest::Approx(y0 / (2 * nu)).epsilon(1e-15));
  CHECK(dissipation_bound(y0, nu, 1e-12 * T, T) == doctest::Approx(y0 / (2 * nu)).epsilon(1e-1));
  CHECK(dissipation_bound(y0, nu, 0.3 * T, T) > dissipation_bound(y0, nu, 0.1 * T, T));
}

TEST_CASE("comparison ODE oracle") {
  const double y0 = 2 * pi, nu = 1.0;
  const double T = blowup_horizon(y0, nu);
  CHECK(comparison_ode_oracle(y0, nu, 0.0) == y0);
  // (1 - 1/2)^{-1/2} = √2 at half the horizon.
  CHECK(comparison_ode_oracle(y0, nu, T / 2) == doctest::Approx(std::sqrt(2.0) * y0).epsilon(1e-6));
  for (double f : {0.1, 0.3, 0.6, 0.9}) {
    const double exact = y0 / std::sqrt(1.0 - f);
    CHECK(std::abs(comparison_ode_oracle(y0, nu, f * T) - exact) <= 1e-6 * exact);
  }
  CHECK(comparison_ode_oracle(y0, 1e4, 5.0) == doctest::Approx(y0).epsilon(1e-9));
  CHECK_THROWS_AS(comparison_ode_oracle(y0, nu, T), DomainError);
  CHECK_THROWS_AS(comparison_ode_oracle(y0, nu, 2 * T), DomainError);
}

TEST_CASE("zero state is a fixed point") {
  const auto d = unit_box(9);
  BurgersState s{VectorField3(d), 0.0, 1.0};
  for (int n = 0; n < 5; ++n) {
    BurgersState next = step(s, 1e-3);
    CHECK(energy_identity_residual(s, next) == 0.0);
    s = std::move(next);
  }
  CHECK(sup_norm(s.u) == 0.0);
  CHECK(s.t == doctest::Approx(5e-3));
  CHECK_THROWS_AS(step(s, 0.0), DomainError);
}

TEST_CASE("initial data fixtures have the requested energy") {
  const auto d = unit_box(17);
  for (auto f : {BurgersFixture::SineModes, BurgersFixture::ExtremalBumps, BurgersFixture::SingleMode}) {
    const VectorField3 u = make_initial_data(d, f, 4.5);
    CHECK(grad_norm_sq(u) == doctest::Approx(4.5).epsilon(1e-12));
  }
  CHECK_THROWS_AS(make_initial_data(d, BurgersFixture::SineModes, 0.0), DomainError);
}

TEST_CASE("linear regime follows heat decay") {
  const auto d = unit_box(17);
  const double lambda1 = compute_eigenpairs(d, 1)[0].lambda;
  const double y0 = 1e-8;
  const BurgersState init{make_initial_data(d, BurgersFixture::SingleMode, y0), 0.0, 1.0};
  BurgersRunOptions opts;
  opts.t_end = 0.02;
  opts.dt = 1e-4;
  opts.sample_every = 20;
  const BurgersRun run = simulate(init, opts);
  const auto& samples = run.monitor.samples;
  REQUIRE(samples.size() == 11);
  for (const auto& s : samples) {
    const double heat = y0 * std::exp(-2.0 * lambda1 * s.t);
    CHECK(std::abs(s.y - heat) <= 0.01 * heat);
  }
  const MonitorReport rep = monitor_bounds(run.monitor);
  CHECK(rep.pass);
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].energy_margin > rep.rows[i - 1].energy_margin);
    CHECK(rep.rows[i].energy_margin > 0.0);
  }
}

TEST_CASE("energy identity residual is first order in dt") {
  const auto d = unit_box(17);
  const BurgersState s{make_initial_data(d, BurgersFixture::SineModes, unit_horizon_energy(1.0)), 0.0, 1.0};
  const double dt = max_time_step(s);
  std::vector<double> res;
  for (int k = 0; k < 4; ++k) res.push_back(std::abs(energy_identity_residual(s, step(s, dt / (1 << k)))));
  for (int k = 1; k < 4; ++k) CHECK(std::log2(res[k - 1] / res[k]) >= 0.9);
  CHECK(res[2] <= 0.05);
}

TEST_CASE("time stepping converges at first order") {
  const auto d = unit_box(13);
  const BurgersState init{make_initial_data(d, BurgersFixture::SineModes, unit_horizon_energy(1.0)), 0.0, 1.0};
  const double dt0 = 0.5 * max_time_step(init);
  std::vector<double> y;
  for (int k = 0; k < 3; ++k) {
    BurgersRunOptions opts;
    opts.t_end = 0.25;
    opts.dt = dt0 / (1 << k);
    opts.sample_every = 1 << 30;
    y.push_back(simulate(init, opts).monitor.samples.back().y);
  }
  const double order = std::log2(std::abs(y[0] - y[1]) / std::abs(y[1] - y[2]));
  CHECK(order >= 0.9);
}

TEST_CASE("a priori bounds along a nonlinear trajectory") {
  const auto d = unit_box(17);
  const BurgersState init{make_initial_data(d, BurgersFixture::SineModes, unit_horizon_energy(1.0)), 0.0, 1.0};
  BurgersRunOptions opts;
  opts.t_end = 0.5;
  opts.sample_every = 10;
  const BurgersRun run = simulate(init, opts);
  CHECK(run.monitor.T == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(run.monitor.samples.back().t == doctest::Approx(0.5).epsilon(1e-14));
  const MonitorReport rep = monitor_bounds(run.monitor);
  CHECK(rep.pass);
  CHECK(rep.worst_energy_ratio <= 1.05);
  CHECK(rep.worst_dissipation_ratio <= 1.05);
  CHECK(rep.worst_pointwise_ratio <= 1.05);
  CHECK(rep.rows.front().energy_margin == 0.0);
  for (std::size_t i = 1; i < run.monitor.samples.size(); ++i)
    CHECK(run.monitor.samples[i].t > run.monitor.samples[i - 1].t);
  for (double q : run.snapshot_quotients) CHECK(q <= sharp_quotient_bound() * 1.05);
}

TEST_CASE("monitor rejects samples at or past the horizon") {
  BoundMonitor m{1.0, 1.0, 2.0, {{0.0, 1.0, 1.0, 0.0, 0.1, 0.0}, {2.0, 1.0, 1.0, 0.5, 0.1, 0.0}}};
  CHECK_THROWS_AS(monitor_bounds(m), DomainError);
}

TEST_CASE("checkpoint round trip") {
  const auto d = unit_box(9);
  const BurgersState s{make_initial_data(d, BurgersFixture::SineModes, 2.0), 0.125, 0.75};
  std::stringstream buf;
  write_checkpoint(buf, s);
  const BurgersState r = read_checkpoint(buf, d);
  CHECK(r.t == s.t);
  CHECK(r.nu == s.nu);
  for (int c = 0; c < 3; ++c)
    for (std::size_t a = 0; a < s.u[c].size(); ++a)
      CHECK(r.u[c][static_cast<int>(a)] == s.u[c][static_cast<int>(a)]);
  std::stringstream empty;
  CHECK_THROWS_AS(read_checkpoint(empty, d), DomainError);
}
