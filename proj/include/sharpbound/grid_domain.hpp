// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sharpbound {

enum class ShapeTag : std::int32_t { Box = 0, LShape = 1, BallApprox = 2, Custom = 3 };

std::string to_string(ShapeTag tag);
ShapeTag shape_from_string(const std::string& name);

/// Node coordinates (i, j, k) into the full node array.
struct Index3 {
  int i = 0;
  int j = 0;
  int k = 0;
  friend bool operator==(const Index3&, const Index3&) = default;
};

struct DomainSpec {
  ShapeTag shape = ShapeTag::Box;
  std::array<int, 3> dims{3, 3, 3};
  double h = 1.0;
  /// BallApprox only; defaults to half the smallest box extent.
  std::optional<double> radius;
};

/// Stencil neighbor order used throughout: -x, +x, -y, +y, -z, +z.
inline constexpr int kNoNeighbor = -1;

/// An open set discretized as an interior-node mask on a uniform grid.
///
/// Nodes sit at (i h, j h, k h). The outermost layer of nodes is never
/// interior, so every interior node has its six stencil neighbors inside the
/// array. Interior nodes are numbered 0..interior_count()-1 in row-major node
/// order (k fastest); fields store one value per interior node.
class VoxelDomain {
 public:
  static std::shared_ptr<const VoxelDomain> build(const DomainSpec& spec);
  /// Custom mask; margin nodes are forced to boundary.
  static std::shared_ptr<const VoxelDomain> from_mask(std::array<int, 3> dims, double h,
                                                      std::vector<std::uint8_t> mask);

  const std::array<int, 3>& dims() const { return dims_; }
  double spacing() const { return h_; }
  ShapeTag shape() const { return shape_; }
  std::size_t node_count() const { return mask_.size(); }
  std::size_t interior_count() const { return nodes_.size(); }
  std::span<const std::uint8_t> mask() const { return mask_; }

  std::size_t flat(Index3 p) const {
    return (static_cast<std::size_t>(p.i) * dims_[1] + p.j) * dims_[2] + p.k;
  }
  bool in_bounds(Index3 p) const;
  bool is_interior(Index3 p) const { return in_bounds(p) && mask_[flat(p)] != 0; }
  /// Interior number of a node, or kNoNeighbor.
  int interior_index(Index3 p) const;
  /// Interior number; throws DomainError if p is not interior.
  int require_interior(Index3 p) const;
  Index3 node(int interior) const { return nodes_[interior]; }
  std::array<double, 3> position(Index3 p) const { return {p.i * h_, p.j * h_, p.k * h_}; }
  std::array<double, 3> position(int interior) const { return position(nodes_[interior]); }

  /// Six neighbor interior numbers (kNoNeighbor where the neighbor is boundary).
  std::span<const int, 6> neighbors(int interior) const {
    return std::span<const int, 6>(neighbors_.data() + 6 * static_cast<std::size_t>(interior), 6);
  }

  /// Hop distance (6-connected) from each interior node to the nearest non-interior node.
  std::vector<int> boundary_distance() const;
  /// Interior node maximizing boundary_distance; ties go to the lowest index.
  int deepest_node() const;

 private:
  VoxelDomain(std::array<int, 3> dims, double h, ShapeTag shape, std::vector<std::uint8_t> mask);

  std::array<int, 3> dims_;
  double h_;
  ShapeTag shape_;
  std::vector<std::uint8_t> mask_;
  std::vector<Index3> nodes_;
  std::vector<int> lookup_;
  std::vector<int> neighbors_;
};

using DomainPtr = std::shared_ptr<const VoxelDomain>;

/// Grid function with implicit zero values on every non-interior node.
class ScalarField {
 public:
  explicit ScalarField(DomainPtr domain);
  ScalarField(DomainPtr domain, std::vector<double> values);

  const DomainPtr& domain() const { return domain_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  double operator[](int interior) const { return values_[interior]; }
  double& operator[](int interior) { return values_[interior]; }
  /// Value at any node; zero off the interior.
  double at(Index3 p) const;

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double alpha);
  /// this += alpha * x
  ScalarField& axpy(double alpha, const ScalarField& x);

  bool same_domain(const ScalarField& other) const { return domain_ == other.domain_; }

 private:
  DomainPtr domain_;
  std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(double alpha, ScalarField a);

/// Three components sharing one domain.
class VectorField3 {
 public:
  explicit VectorField3(DomainPtr domain);
  explicit VectorField3(std::array<ScalarField, 3> components);

  const DomainPtr& domain() const { return components_[0].domain(); }
  const ScalarField& operator[](int c) const { return components_[c]; }
  ScalarField& operator[](int c) { return components_[c]; }

 private:
  std::array<ScalarField, 3> components_;
};

/// Field obtained by evaluating f at every interior node position.
template <typename F>
ScalarField sample(const DomainPtr& domain, F&& f) {
  ScalarField u(domain);
  for (std::size_t n = 0; n < domain->interior_count(); ++n) {
    const auto x = domain->position(static_cast<int>(n));
    u[static_cast<int>(n)] = f(x[0], x[1], x[2]);
  }
  return u;
}

// Raw stencil kernels over interior-numbered arrays.
void apply_laplacian(const VoxelDomain& domain, std::span<const double> u, std::span<double> out);
/// Centered first difference along `axis` (0, 1 or 2), zero extension.
void apply_centered_difference(const VoxelDomain& domain, int axis, std::span<const double> u,
                               std::span<double> out);

/// 7-point Laplacian with zero Dirichlet values.
ScalarField laplacian(const ScalarField& u);
/// Forward-difference Dirichlet energy, counting edges that cross the boundary.
double grad_norm_sq(const ScalarField& u);
double l2_inner(const ScalarField& u, const ScalarField& v);
double l2_norm_sq(const ScalarField& u);
double l2_norm(const ScalarField& u);
double sup_norm(const ScalarField& u);
/// Interior number of max |u| (lowest index on ties).
int argmax_abs(const ScalarField& u);

double grad_norm_sq(const VectorField3& u);
double l2_norm_sq(const VectorField3& u);
/// max over nodes of the Euclidean length of u.
double sup_norm(const VectorField3& u);
VectorField3 laplacian(const VectorField3& u);

}  // namespace sharpbound
