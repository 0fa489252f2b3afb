// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sharpbound/error.hpp"
#include "sharpbound/extremal_family.hpp"
#include "sharpbound/quotient_maximizer.hpp"

using namespace sharpbound;
using std::numbers::pi;

namespace {

DomainPtr unit_box(int n) {
  return VoxelDomain::build({ShapeTag::Box, {n, n, n}, 1.0 / (n - 1), std::nullopt});
}

double embedded_quotient(int n, double R) {
  const auto d = unit_box(n);
  return quotient(embed_in_domain(cutoff_sequence(R), d), embedding_center(*d));
}

}  // namespace

TEST_CASE("extremal profile values") {
  CHECK(extremal_value(0.0) == 1.0);
  CHECK(extremal_value(1.0) == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(extremal_value(1.0) == doctest::Approx(0.63212).epsilon(1e-5));
  double previous = 1.0;
  for (double r = 1e-3; r < 200.0; r *= 1.3) {
    const double v = extremal_value(r);
    CHECK(v < previous);
    CHECK(v > 0.0);
    previous = v;
  }
  CHECK(extremal_value(1e6) == doctest::Approx(1e-6).epsilon(1e-12));
}

TEST_CASE("small-r branches agree with the power series") {
  // u = Σ (-r)^j/(j+1)!, u' = Σ j (-1)^j r^{j-1}/(j+1)!; summed in long double.
  for (double r : {1e-9, 1e-6, 5e-5, 9.9e-5, 1.01e-4, 3e-3, 9e-3, 1.1e-2, 0.2}) {
    long double v = 0.0L, dv = 0.0L, fact = 1.0L;
    for (int j = 0; j < 40; ++j) {
      fact *= (j + 1);
      const long double sign = (j % 2 == 0) ? 1.0L : -1.0L;
      v += sign * std::pow(static_cast<long double>(r), j) / fact;
      if (j > 0) dv += sign * j * std::pow(static_cast<long double>(r), j - 1) / fact;
    }
    CHECK(extremal_value(r) == doctest::Approx(static_cast<double>(v)).epsilon(1e-14));
    CHECK(extremal_derivative(r) == doctest::Approx(static_cast<double>(dv)).epsilon(1e-9));
  }
}

TEST_CASE("derivatives match finite differences") {
  for (double r : {0.05, 0.5, 1.0, 3.0, 10.0}) {
    const double e = 1e-5;
    const double fd = (extremal_value(r + e) - extremal_value(r - e)) / (2 * e);
    CHECK(extremal_derivative(r) == doctest::Approx(fd).epsilon(1e-8));
    // Radial Laplacian u'' + 2u'/r by differences.
    const double upp = (extremal_value(r + e) - 2 * extremal_value(r) + extremal_value(r - e)) / (e * e);
    CHECK(extremal_laplacian(r) == doctest::Approx(upp + 2 * fd / r).epsilon(1e-4));
    CHECK(extremal_laplacian(r) == doctest::Approx(-std::exp(-r) / r).epsilon(1e-14));
  }
}

TEST_CASE("cutoff bump shape") {
  CHECK(cutoff_bump(0.0) == 1.0);
  CHECK(cutoff_bump(0.5) == 1.0);
  CHECK(cutoff_bump(0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cutoff_bump(1.0) == 0.0);
  CHECK(cutoff_bump(1.7) == 0.0);
  for (double t : {0.5, 1.0}) {
    CHECK(cutoff_bump_derivative(t) == doctest::Approx(0.0));
    CHECK(cutoff_bump_second_derivative(t) == doctest::Approx(0.0));
  }
  for (double t : {0.55, 0.7, 0.9}) {
    const double e = 1e-6;
    CHECK(cutoff_bump_derivative(t) ==
          doctest::Approx((cutoff_bump(t + e) - cutoff_bump(t - e)) / (2 * e)).epsilon(1e-7));
    CHECK(cutoff_bump_second_derivative(t) ==
          doctest::Approx((cutoff_bump_derivative(t + e) - cutoff_bump_derivative(t - e)) / (2 * e))
              .epsilon(1e-6));
    CHECK(cutoff_bump_derivative(t) < 0.0);
  }
}

TEST_CASE("uncut extremal integrals") {
  const RadialIntegrals ri = radial_integrals(extremal_profile(40.0));
  CHECK(ri.sup == 1.0);
  CHECK(std::abs(ri.grad_sq - 2 * pi) <= 1e-6);
  CHECK(std::abs(ri.lap_sq - 2 * pi) <= 1e-6);
  CHECK(std::abs(ri.quotient() - 1.0 / (2 * pi)) <= 1e-6);
}

TEST_CASE("analytic laplacian agrees with the differentiated profile") {
  const RadialProfile p = extremal_profile(40.0);
  const RadialIntegrals a = radial_integrals(p);
  const RadialIntegrals fd = radial_integrals_finite_difference(p);
  CHECK(std::abs(fd.lap_sq - a.lap_sq) <= 1e-4 * a.lap_sq);
  // The finite-difference route stops at r_max; the 1/r gradient tail 4π/r_max is missing.
  CHECK(a.grad_sq - fd.grad_sq == doctest::Approx(4 * pi / 40.0).epsilon(1e-3));

  const RadialProfile cut = cutoff_sequence(20.0);
  const RadialIntegrals ca = radial_integrals(cut);
  const RadialIntegrals cf = radial_integrals_finite_difference(cut);
  CHECK(std::abs(cf.lap_sq - ca.lap_sq) <= 1e-4 * ca.lap_sq);
  CHECK(std::abs(cf.grad_sq - ca.grad_sq) <= 1e-4 * ca.grad_sq);
}

TEST_CASE("zero profile") {
  const RadialProfile z = sampled_profile({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.0, 0.0, 0.0, 0.0});
  const RadialIntegrals ri = radial_integrals(z);
  CHECK(ri.sup == 0.0);
  CHECK(ri.grad_sq == 0.0);
  CHECK(ri.lap_sq == 0.0);
  CHECK(ri.quotient() == 0.0);
}

TEST_CASE("cutoff sequence") {
  CHECK_THROWS_AS(cutoff_sequence(3.9), DomainError);
  for (double R : {4.0, 10.0, 40.0}) {
    const RadialProfile p = cutoff_sequence(R);
    CHECK(profile_value(p, 0.0) == 1.0);
    CHECK(profile_value(p, R) == 0.0);
    CHECK(profile_value(p, 2 * R) == 0.0);
    CHECK(profile_value(p, 0.25 * R) == doctest::Approx(extremal_value(0.25 * R)).epsilon(1e-15));
  }
}

TEST_CASE("cut integrals approach the extremal values as R grows") {
  double grad_err = 1e300, lap_err = 1e300;
  for (double R : {10.0, 20.0, 40.0, 80.0, 160.0}) {
    const RadialIntegrals ri = radial_integrals(cutoff_sequence(R));
    CHECK(ri.sup == 1.0);
    CHECK(std::abs(ri.grad_sq - 2 * pi) < grad_err);
    CHECK(std::abs(ri.lap_sq - 2 * pi) < lap_err);
    CHECK(ri.quotient() <= 1.0 / (2 * pi));
    grad_err = std::abs(ri.grad_sq - 2 * pi);
    lap_err = std::abs(ri.lap_sq - 2 * pi);
  }
  CHECK(grad_err <= 0.05 * 2 * pi);
  CHECK(lap_err <= 0.01 * 2 * pi);
}

TEST_CASE("R = 20 values for the quintic cutoff") {
  // The gradient tail of u ~ 1/r beyond R/2 plus the cutoff slope keep
  // grad_sq well above 2π at this radius for any C² cutoff flat on [0, ½].
  const RadialIntegrals ri = radial_integrals(cutoff_sequence(20.0));
  CHECK(ri.grad_sq / (2 * pi) == doctest::Approx(1.2857).epsilon(1e-3));
  CHECK(ri.lap_sq / (2 * pi) == doctest::Approx(1.0343).epsilon(1e-3));
  CHECK(ri.quotient() * 2 * pi == doctest::Approx(0.867).epsilon(2e-3));
}

TEST_CASE("rescaling leaves the product of the norms unchanged") {
  const RadialProfile p = cutoff_sequence(12.0);
  const RadialIntegrals a = radial_integrals(p);
  for (double s : {0.01, 0.3, 7.0}) {
    const RadialIntegrals b = radial_integrals(rescaled(p, s));
    CHECK(b.grad_sq == doctest::Approx(s * a.grad_sq).epsilon(1e-8));
    CHECK(b.lap_sq == doctest::Approx(a.lap_sq / s).epsilon(1e-8));
    CHECK(std::sqrt(b.grad_sq * b.lap_sq) == doctest::Approx(std::sqrt(a.grad_sq * a.lap_sq)).epsilon(1e-8));
    CHECK(rescaled(p, s).support_radius().value() == doctest::Approx(12.0 * s));
  }
}

TEST_CASE("embedding in the unit box") {
  const auto d = unit_box(33);
  const RadialProfile p = cutoff_sequence(10.0);
  const ScalarField u = embed_in_domain(p, d);
  const Index3 c = embedding_center(*d);
  CHECK(c == Index3{16, 16, 16});
  CHECK(inscribed_radius(*d, c) == doctest::Approx(0.5));
  CHECK(sup_norm(u) == u.at(c));
  CHECK(u.at(c) == 1.0);
  // Support is the inscribed ball: exactly zero outside it.
  int outside = 0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    const Index3 q = d->node(static_cast<int>(a));
    const double r = std::hypot(q.i - 16, q.j - 16, q.k - 16) * d->spacing();
    if (r >= 0.5) {
      CHECK(u[static_cast<int>(a)] == 0.0);
      ++outside;
    }
  }
  CHECK(outside > 0);
  CHECK(quotient(u, c) <= 1.05 / (2 * pi));
}

TEST_CASE("embedding in the L-shape uses the smaller inscribed ball") {
  const auto box = unit_box(33);
  const auto l = VoxelDomain::build({ShapeTag::LShape, {33, 33, 33}, 1.0 / 32, std::nullopt});
  const Index3 cl = embedding_center(*l);
  CHECK(inscribed_radius(*l, cl) < inscribed_radius(*box, embedding_center(*box)));
  const ScalarField u = embed_in_domain(cutoff_sequence(10.0), l);
  CHECK(u.at(cl) == 1.0);
  const double q = quotient(u, cl);
  CHECK(q <= 1.05 / (2 * pi));
  CHECK(q >= 0.6 / (2 * pi));
}

TEST_CASE("embedding preconditions") {
  CHECK_THROWS_AS(embed_in_domain(extremal_profile(), unit_box(17)), DomainError);
  CHECK_THROWS_AS(embed_in_domain(cutoff_sequence(10.0), unit_box(6)), DomainError);
}

TEST_CASE("joint refinement drives the embedded quotient toward the sharp value") {
  const double q1 = embedded_quotient(17, 5.0);
  const double q2 = embedded_quotient(33, 10.0);
  const double q3 = embedded_quotient(65, 20.0);
  const double q4 = embedded_quotient(129, 40.0);
  CHECK(q1 < q2);
  CHECK(q2 < q3);
  CHECK(q3 < q4);
  CHECK(q4 <= 1.05 / (2 * pi));
  CHECK(q4 >= 0.95 / (2 * pi));
}
