// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sharpbound/error.hpp"
#include "sharpbound/grid_domain.hpp"

using namespace sharpbound;
using std::numbers::pi;

namespace {

DomainPtr unit_box(int n) {
  return VoxelDomain::build({ShapeTag::Box, {n, n, n}, 1.0 / (n - 1), std::nullopt});
}

ScalarField random_field(const DomainPtr& d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  ScalarField u(d);
  for (auto& v : u.values()) v = normal(rng);
  return u;
}

}  // namespace

TEST_CASE("box interior count is the full array minus one margin layer") {
  const auto d = VoxelDomain::build({ShapeTag::Box, {5, 5, 5}, 0.25, std::nullopt});
  CHECK(d->interior_count() == 27);
  CHECK(d->node_count() == 125);
  CHECK(d->is_interior({1, 1, 1}));
  CHECK_FALSE(d->is_interior({0, 2, 2}));
  CHECK_FALSE(d->is_interior({4, 2, 2}));

  const auto b = VoxelDomain::build({ShapeTag::Box, {6, 7, 8}, 0.1, std::nullopt});
  CHECK(b->interior_count() == 4 * 5 * 6);
}

TEST_CASE("L-shape count matches direct enumeration of the mask") {
  const int n = 9;
  const auto d = VoxelDomain::build({ShapeTag::LShape, {n, n, n}, 1.0 / (n - 1), std::nullopt});
  // Enumerate: interior box nodes minus the quadrant i, j >= (n-1)/2, all k.
  int expected = 0;
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j)
      for (int k = 1; k < n - 1; ++k)
        if (!(i >= (n - 1) / 2 && j >= (n - 1) / 2)) ++expected;
  CHECK(expected == 231);
  CHECK(d->interior_count() == static_cast<std::size_t>(expected));
  CHECK_FALSE(d->is_interior({5, 5, 3}));
  CHECK(d->is_interior({3, 5, 3}));
}

TEST_CASE("ball geometry") {
  const auto d = VoxelDomain::build({ShapeTag::BallApprox, {21, 21, 21}, 0.05, std::nullopt});
  CHECK(d->is_interior({10, 10, 10}));
  CHECK_FALSE(d->is_interior({1, 1, 1}));
  // Symmetric under the reflection i -> 20 - i.
  for (std::size_t n = 0; n < d->interior_count(); ++n) {
    const Index3 p = d->node(static_cast<int>(n));
    CHECK(d->is_interior({20 - p.i, p.j, p.k}));
  }
  CHECK(d->node(d->deepest_node()) == Index3{10, 10, 10});
}

TEST_CASE("degenerate inputs are construction errors") {
  CHECK_THROWS_AS(VoxelDomain::build({ShapeTag::BallApprox, {9, 9, 9}, 0.1, 0.05}), DomainError);
  CHECK_THROWS_AS(VoxelDomain::build({ShapeTag::Box, {2, 5, 5}, 0.1, std::nullopt}), DomainError);
  CHECK_THROWS_AS(VoxelDomain::build({ShapeTag::Box, {5, 5, 5}, 0.0, std::nullopt}), DomainError);
  CHECK_THROWS_AS(VoxelDomain::from_mask({4, 4, 4}, 0.1, std::vector<std::uint8_t>(64, 0)),
                  DomainError);
  CHECK_THROWS_AS(VoxelDomain::from_mask({4, 4, 4}, 0.1, std::vector<std::uint8_t>(10, 1)),
                  DomainError);
}

TEST_CASE("custom masks force the margin to boundary") {
  const auto d = VoxelDomain::from_mask({4, 4, 4}, 0.5, std::vector<std::uint8_t>(64, 1));
  CHECK(d->interior_count() == 8);
  CHECK(d->shape() == ShapeTag::Custom);
}

TEST_CASE("shape names round trip") {
  for (auto s : {ShapeTag::Box, ShapeTag::LShape, ShapeTag::BallApprox, ShapeTag::Custom})
    CHECK(shape_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(shape_from_string("torus"), DomainError);
}

TEST_CASE("neighbors and boundary distance") {
  const auto d = unit_box(7);
  const int c = d->require_interior({3, 3, 3});
  const auto nb = d->neighbors(c);
  CHECK(d->node(nb[0]) == Index3{2, 3, 3});
  CHECK(d->node(nb[5]) == Index3{3, 3, 4});
  const int corner = d->require_interior({1, 1, 1});
  CHECK(d->neighbors(corner)[0] == kNoNeighbor);
  const auto dist = d->boundary_distance();
  CHECK(dist[corner] == 1);
  CHECK(dist[c] == 3);
  CHECK_THROWS_AS(d->require_interior({0, 0, 0}), DomainError);
}

TEST_CASE("laplacian of zero is zero") {
  const auto d = unit_box(9);
  const ScalarField z(d);
  CHECK(sup_norm(laplacian(z)) == 0.0);
  CHECK(grad_norm_sq(z) == 0.0);
}

TEST_CASE("laplacian of a sine mode is the 3-point eigenvalue times the mode") {
  const int n = 17;
  const auto d = unit_box(n);
  const double h = d->spacing();
  const ScalarField u = sample(d, [](double x, double y, double z) {
    return std::sin(pi * x) * std::sin(2 * pi * y) * std::sin(3 * pi * z);
  });
  const auto axis = [h](int k) { return (2.0 - 2.0 * std::cos(k * pi * h)) / (h * h); };
  const double lambda = axis(1) + axis(2) + axis(3);
  const ScalarField lu = laplacian(u);
  double worst = 0.0;
  for (std::size_t a = 0; a < u.size(); ++a)
    worst = std::max(worst, std::abs(lu[static_cast<int>(a)] + lambda * u[static_cast<int>(a)]));
  CHECK(worst <= 1e-10 * lambda);
}

TEST_CASE("stencil is exact on quadratics away from the boundary layer") {
  const int n = 11;
  const auto d = unit_box(n);
  const ScalarField u = sample(d, [](double x, double, double) { return x * (1.0 - x); });
  const ScalarField lu = laplacian(u);
  int checked = 0;
  for (std::size_t a = 0; a < u.size(); ++a) {
    const Index3 p = d->node(static_cast<int>(a));
    // The boundary layer in y and z sees the zero extension; x(1-x) itself vanishes at x = 0, 1.
    if (p.j == 1 || p.j == n - 2 || p.k == 1 || p.k == n - 2) continue;
    CHECK(lu[static_cast<int>(a)] == doctest::Approx(-2.0).epsilon(1e-10));
    ++checked;
  }
  CHECK(checked == 9 * 7 * 7);
}

TEST_CASE("constant field norm is N h^3") {
  const auto d = VoxelDomain::build({ShapeTag::LShape, {9, 9, 9}, 0.125, std::nullopt});
  ScalarField one(d);
  for (auto& v : one.values()) v = 1.0;
  const double h = d->spacing();
  CHECK(l2_norm_sq(one) == doctest::Approx(231 * h * h * h).epsilon(1e-14));
  CHECK(sup_norm(one) == 1.0);
}

TEST_CASE("summation by parts holds to rounding on random fields") {
  for (auto shape : {ShapeTag::Box, ShapeTag::LShape, ShapeTag::BallApprox}) {
    const auto d = VoxelDomain::build({shape, {13, 11, 12}, 0.09, std::nullopt});
    for (unsigned seed = 0; seed < 5; ++seed) {
      const ScalarField u = random_field(d, seed);
      const double g = grad_norm_sq(u);
      const double p = -l2_inner(u, laplacian(u));
      CHECK(std::abs(g - p) <= 1e-12 * g);
    }
  }
}

TEST_CASE("discrete laplacian is symmetric and negative definite") {
  const auto d = VoxelDomain::build({ShapeTag::LShape, {10, 10, 10}, 0.1, std::nullopt});
  const ScalarField u = random_field(d, 11);
  const ScalarField v = random_field(d, 12);
  const double uv = l2_inner(laplacian(u), v);
  const double vu = l2_inner(u, laplacian(v));
  CHECK(std::abs(uv - vu) <= 1e-12 * std::abs(uv));
  CHECK(l2_inner(u, laplacian(u)) < 0.0);
}

TEST_CASE("centered difference is skew-adjoint") {
  const auto d = VoxelDomain::build({ShapeTag::BallApprox, {12, 12, 12}, 0.1, std::nullopt});
  const ScalarField u = random_field(d, 3);
  const ScalarField v = random_field(d, 4);
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> du(u.size()), dv(v.size());
    apply_centered_difference(*d, axis, u.values(), du);
    apply_centered_difference(*d, axis, v.values(), dv);
    double a = 0.0, b = 0.0;
    for (std::size_t n = 0; n < du.size(); ++n) {
      a += du[n] * v[static_cast<int>(n)];
      b += u[static_cast<int>(n)] * dv[n];
    }
    CHECK(std::abs(a + b) <= 1e-12 * std::abs(a));
  }
}

TEST_CASE("field arithmetic and domain checks") {
  const auto d = unit_box(6);
  ScalarField u = random_field(d, 1);
  const ScalarField v = random_field(d, 2);
  const ScalarField w = u + v - v;
  for (std::size_t a = 0; a < u.size(); ++a)
    CHECK(w[static_cast<int>(a)] == doctest::Approx(u[static_cast<int>(a)]));
  CHECK(l2_norm(2.0 * u) == doctest::Approx(2.0 * l2_norm(u)));
  CHECK(u.at({0, 0, 0}) == 0.0);
  const int peak = argmax_abs(u);
  CHECK(std::abs(u[peak]) == sup_norm(u));

  const ScalarField other(unit_box(6));
  CHECK_THROWS_AS(u += other, DomainError);
}

TEST_CASE("vector field norms sum components") {
  const auto d = unit_box(8);
  VectorField3 f(d);
  f[0] = random_field(d, 1);
  f[2] = random_field(d, 2);
  CHECK(grad_norm_sq(f) == doctest::Approx(grad_norm_sq(f[0]) + grad_norm_sq(f[2])));
  CHECK(l2_norm_sq(f) == doctest::Approx(l2_norm_sq(f[0]) + l2_norm_sq(f[2])));
  double sup = 0.0;
  for (std::size_t a = 0; a < f[0].size(); ++a)
    sup = std::max(sup, std::hypot(f[0][static_cast<int>(a)], f[2][static_cast<int>(a)]));
  CHECK(sup_norm(f) == doctest::Approx(sup));
}
