// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <iosfwd>
#include <vector>

#include "sharpbound/conjugate_gradient.hpp"
#include "sharpbound/grid_domain.hpp"

namespace sharpbound {

/// Velocity field of the vector Burgers equation u_t + (u·∇)u = νΔu.
struct BurgersState {
  VectorField3 u;
  double t = 0.0;
  double nu = 1.0;
};

/// Time after which the a priori bounds stop being guaranteed:
/// 256π²ν³ / (27 y0²), y0 = ‖∇u₀‖². Throws DomainError unless y0, ν > 0.
double blowup_horizon(double y0, double nu);

/// Rate constant C in y' <= 2Cy³, obtained by Young's inequality from the
/// sharp constant 1/√(2π) after absorbing ν‖Δu‖². Equals 27/(1024π²ν³).
double young_absorbed_rate(double nu);

/// Explicit stable step: θ · min(h²/(6ν), h / max|u|).
double max_time_step(const BurgersState& state, double safety = 0.9);

/// (u·∇)u with centred differences, zero extension.
VectorField3 advection(const VectorField3& u);

/// One semi-implicit step: (I - ν dt Δ_h) u₁ = u₀ - dt (u₀·∇)u₀, each
/// component by CG. Throws ConvergenceError on CG failure and
/// std::runtime_error on a non-finite state.
BurgersState step(const BurgersState& state, double dt, const CgOptions& cg = {});

/// Discrete energy balance over one step, normalized by ν‖Δū‖²:
/// (y₁ - y₀)/(2dt) + ν‖Δū‖² - ⟨(ū·∇)ū, Δū⟩ with ū the half-step average.
double energy_identity_residual(const BurgersState& before, const BurgersState& after);

struct BoundSample {
  double t;
  double y;           // ‖∇u‖²
  double d;           // ‖Δu‖²
  double dissipation; // trapezoid ∫₀ᵗ d
  double sup;         // sup |u|
  double identity_residual;
};

struct BoundMonitor {
  double y0 = 0.0;
  double nu = 1.0;
  double T = 0.0;
  std::vector<BoundSample> samples;
};

/// ‖∇u₀‖² / √(1 - t/T)
double energy_bound(double y0, double t, double T);
/// ‖∇u₀‖² / (2ν (1 - (t/T)^{1/6}) √(1 - √(t/T))), with its t -> 0 limit y0/(2ν).
double dissipation_bound(double y0, double nu, double t, double T);

struct MonitorRow {
  double t;
  double energy_bound;
  double energy_margin;       // bound - y
  double dissipation_bound;
  double dissipation_margin;  // bound - ∫d
  double pointwise_bound;     // (2π)^{-1/2} (y d)^{1/4}
  double pointwise_margin;    // bound - sup|u|
};

struct MonitorReport {
  std::vector<MonitorRow> rows;
  double worst_energy_ratio = 0.0;       // max y / bound
  double worst_dissipation_ratio = 0.0;  // max ∫d / bound
  double worst_pointwise_ratio = 0.0;    // max sup|u| / bound
  bool pass = false;                     // all margins >= -0.05 bound
};

/// Throws DomainError if any sample has t >= T.
MonitorReport monitor_bounds(const BoundMonitor& traj, double slack = 0.05);

/// RK4 for y' = 2Cy³ from y(0) = y0 to t, C = young_absorbed_rate(ν).
/// Throws DomainError if t >= T.
double comparison_ode_oracle(double y0, double nu, double t, int steps = 20000);

struct BurgersRunOptions {
  double t_end = 0.0;
  double dt = 0.0;  // 0: use max_time_step at each step
  double dt_fraction = 1.0;
  int sample_every = 1;
  CgOptions cg{};
};

struct BurgersRun {
  BoundMonitor monitor;
  BurgersState final_state;
  std::vector<double> snapshot_quotients;  // sup|u|² / (‖∇u‖‖Δu‖) per sample
};

/// Integrates to t_end with the last step trimmed to land exactly on it.
BurgersRun simulate(const BurgersState& initial, const BurgersRunOptions& options);

/// Initial data fixtures.
enum class BurgersFixture { SineModes, ExtremalBumps, SingleMode };

/// Builds u₀ for the fixture and rescales it so its Dirichlet energy is y0.
/// SineModes: sin-mode products per component (box-like domains).
/// ExtremalBumps: cut extremal bumps of alternating sign per component.
/// SingleMode: only the x component, lowest box sine mode.
VectorField3 make_initial_data(const DomainPtr& domain, BurgersFixture fixture, double y0);

/// Checkpoint: float64 t, float64 ν, then three field records in the flat binary layout.
void write_checkpoint(std::ostream& out, const BurgersState& state);
BurgersState read_checkpoint(std::istream& in, const DomainPtr& domain);

}  // namespace sharpbound
