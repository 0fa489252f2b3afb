// SPDX-License-Identifier: Apache-2.0
#include "sharpbound/grid_domain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <limits>

#include "sharpbound/error.hpp"

namespace sharpbound {

std::string to_string(ShapeTag tag) {
  switch (tag) {
    case ShapeTag::Box: return "box";
    case ShapeTag::LShape: return "lshape";
    case ShapeTag::BallApprox: return "ball";
    case ShapeTag::Custom: return "custom";
  }
  return "unknown";
}

ShapeTag shape_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "box") return ShapeTag::Box;
  if (s == "lshape" || s == "l-shape" || s == "l") return ShapeTag::LShape;
  if (s == "ball" || s == "ballapprox") return ShapeTag::BallApprox;
  if (s == "custom") return ShapeTag::Custom;
  throw DomainError("unknown shape '" + name + "'");
}

namespace {

void check_grid(std::array<int, 3> dims, double h) {
  for (int d : dims) {
    if (d < 3) throw DomainError("grid needs at least 3 nodes per axis");
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid spacing must be positive");
}

}  // namespace

VoxelDomain::VoxelDomain(std::array<int, 3> dims, double h, ShapeTag shape,
                         std::vector<std::uint8_t> mask)
    : dims_(dims), h_(h), shape_(shape), mask_(std::move(mask)) {
  // Margin nodes are always boundary.
  for (int i = 0; i < dims_[0]; ++i)
    for (int j = 0; j < dims_[1]; ++j)
      for (int k = 0; k < dims_[2]; ++k) {
        const bool margin = i == 0 || j == 0 || k == 0 || i == dims_[0] - 1 ||
                            j == dims_[1] - 1 || k == dims_[2] - 1;
        if (margin) mask_[flat({i, j, k})] = 0;
      }

  lookup_.assign(mask_.size(), kNoNeighbor);
  for (int i = 0; i < dims_[0]; ++i)
    for (int j = 0; j < dims_[1]; ++j)
      for (int k = 0; k < dims_[2]; ++k) {
        const std::size_t f = flat({i, j, k});
        if (mask_[f]) {
          lookup_[f] = static_cast<int>(nodes_.size());
          nodes_.push_back({i, j, k});
        }
      }
  if (nodes_.empty()) throw DomainError("domain has no interior nodes");

  neighbors_.resize(6 * nodes_.size());
  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const Index3 p = nodes_[n];
    const Index3 nb[6] = {{p.i - 1, p.j, p.k}, {p.i + 1, p.j, p.k}, {p.i, p.j - 1, p.k},
                          {p.i, p.j + 1, p.k}, {p.i, p.j, p.k - 1}, {p.i, p.j, p.k + 1}};
    for (int d = 0; d < 6; ++d) neighbors_[6 * n + d] = lookup_[flat(nb[d])];
  }
}

std::shared_ptr<const VoxelDomain> VoxelDomain::build(const DomainSpec& spec) {
  check_grid(spec.dims, spec.h);
  const auto [nx, ny, nz] = spec.dims;
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(nx) * ny * nz, 0);
  auto at = [&](int i, int j, int k) -> std::uint8_t& {
    return mask[(static_cast<std::size_t>(i) * ny + j) * nz + k];
  };

  switch (spec.shape) {
    case ShapeTag::Box:
      for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
          for (int k = 1; k < nz - 1; ++k) at(i, j, k) = 1;
      break;
    case ShapeTag::LShape: {
      // Square cross-section with the (+x, +y) quadrant removed, extruded in z.
      const int cx = (nx - 1) / 2;
      const int cy = (ny - 1) / 2;
      for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j) {
          if (i >= cx && j >= cy) continue;
          for (int k = 1; k < nz - 1; ++k) at(i, j, k) = 1;
        }
      break;
    }
    case ShapeTag::BallApprox: {
      const double cx = 0.5 * (nx - 1) * spec.h;
      const double cy = 0.5 * (ny - 1) * spec.h;
      const double cz = 0.5 * (nz - 1) * spec.h;
      const double radius =
          spec.radius.value_or(0.5 * (std::min({nx, ny, nz}) - 1) * spec.h);
      if (!(radius >= spec.h)) throw DomainError("ball radius must be at least one grid spacing");
      for (int i = 1; i < nx - 1; ++i)
        for (int j = 1; j < ny - 1; ++j)
          for (int k = 1; k < nz - 1; ++k) {
            const double dx = i * spec.h - cx, dy = j * spec.h - cy, dz = k * spec.h - cz;
            if (std::sqrt(dx * dx + dy * dy + dz * dz) < radius) at(i, j, k) = 1;
          }
      break;
    }
    case ShapeTag::Custom:
      throw DomainError("custom domains are built from an explicit mask");
  }
  return std::shared_ptr<const VoxelDomain>(
      new VoxelDomain(spec.dims, spec.h, spec.shape, std::move(mask)));
}

std::shared_ptr<const VoxelDomain> VoxelDomain::from_mask(std::array<int, 3> dims, double h,
                                                          std::vector<std::uint8_t> mask) {
  check_grid(dims, h);
  if (mask.size() != static_cast<std::size_t>(dims[0]) * dims[1] * dims[2])
    throw DomainError("mask size does not match dims");
  return std::shared_ptr<const VoxelDomain>(
      new VoxelDomain(dims, h, ShapeTag::Custom, std::move(mask)));
}

bool VoxelDomain::in_bounds(Index3 p) const {
  return p.i >= 0 && p.j >= 0 && p.k >= 0 && p.i < dims_[0] && p.j < dims_[1] && p.k < dims_[2];
}

int VoxelDomain::interior_index(Index3 p) const {
  return in_bounds(p) ? lookup_[flat(p)] : kNoNeighbor;
}

int VoxelDomain::require_interior(Index3 p) const {
  const int n = interior_index(p);
  if (n == kNoNeighbor)
    throw DomainError("node (" + std::to_string(p.i) + "," + std::to_string(p.j) + "," +
                      std::to_string(p.k) + ") is not interior");
  return n;
}

std::vector<int> VoxelDomain::boundary_distance() const {
  const int n = static_cast<int>(nodes_.size());
  std::vector<int> dist(n, std::numeric_limits<int>::max());
  std::deque<int> queue;
  for (int a = 0; a < n; ++a) {
    for (int nb : neighbors(a)) {
      if (nb == kNoNeighbor) {
        dist[a] = 1;
        queue.push_back(a);
        break;
      }
    }
  }
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int nb : neighbors(a)) {
      if (nb != kNoNeighbor && dist[nb] > dist[a] + 1) {
        dist[nb] = dist[a] + 1;
        queue.push_back(nb);
      }
    }
  }
  return dist;
}

int VoxelDomain::deepest_node() const {
  const auto dist = boundary_distance();
  return static_cast<int>(std::max_element(dist.begin(), dist.end()) - dist.begin());
}

// ---------------------------------------------------------------------------

ScalarField::ScalarField(DomainPtr domain)
    : domain_(std::move(domain)), values_(domain_->interior_count(), 0.0) {}

ScalarField::ScalarField(DomainPtr domain, std::vector<double> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
  if (values_.size() != domain_->interior_count())
    throw DomainError("field size does not match interior node count");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("field values must be finite");
}

double ScalarField::at(Index3 p) const {
  const int n = domain_->interior_index(p);
  return n == kNoNeighbor ? 0.0 : values_[n];
}

namespace {

void require_same(const ScalarField& a, const ScalarField& b) {
  if (!a.same_domain(b)) throw DomainError("fields live on different domains");
}

}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& other) { return axpy(1.0, other); }
ScalarField& ScalarField::operator-=(const ScalarField& other) { return axpy(-1.0, other); }

ScalarField& ScalarField::operator*=(double alpha) {
  for (double& v : values_) v *= alpha;
  return *this;
}

ScalarField& ScalarField::axpy(double alpha, const ScalarField& x) {
  require_same(*this, x);
  for (std::size_t n = 0; n < values_.size(); ++n) values_[n] += alpha * x.values_[n];
  return *this;
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(double alpha, ScalarField a) { return a *= alpha; }

VectorField3::VectorField3(DomainPtr domain)
    : components_{ScalarField(domain), ScalarField(domain), ScalarField(domain)} {}

VectorField3::VectorField3(std::array<ScalarField, 3> components)
    : components_(std::move(components)) {
  if (!components_[0].same_domain(components_[1]) || !components_[0].same_domain(components_[2]))
    throw DomainError("vector components must share one domain");
}

// ---------------------------------------------------------------------------

void apply_laplacian(const VoxelDomain& domain, std::span<const double> u, std::span<double> out) {
  const double inv_h2 = 1.0 / (domain.spacing() * domain.spacing());
  const std::size_t n = domain.interior_count();
  for (std::size_t a = 0; a < n; ++a) {
    const auto nb = domain.neighbors(static_cast<int>(a));
    double sum = 0.0;
    for (int b : nb)
      if (b != kNoNeighbor) sum += u[b];
    out[a] = (sum - 6.0 * u[a]) * inv_h2;
  }
}

void apply_centered_difference(const VoxelDomain& domain, int axis, std::span<const double> u,
                               std::span<double> out) {
  const double inv_2h = 0.5 / domain.spacing();
  const std::size_t n = domain.interior_count();
  for (std::size_t a = 0; a < n; ++a) {
    const auto nb = domain.neighbors(static_cast<int>(a));
    const int lo = nb[2 * axis];
    const int hi = nb[2 * axis + 1];
    const double ulo = lo == kNoNeighbor ? 0.0 : u[lo];
    const double uhi = hi == kNoNeighbor ? 0.0 : u[hi];
    out[a] = (uhi - ulo) * inv_2h;
  }
}

ScalarField laplacian(const ScalarField& u) {
  ScalarField out(u.domain());
  apply_laplacian(*u.domain(), u.values(), out.values());
  return out;
}

double grad_norm_sq(const ScalarField& u) {
  // Every interior node owns its three forward edges, plus any backward edge
  // whose far end is boundary (those edges have no interior owner).
  const VoxelDomain& domain = *u.domain();
  const auto v = u.values();
  double sum = 0.0;
  for (std::size_t a = 0; a < domain.interior_count(); ++a) {
    const auto nb = domain.neighbors(static_cast<int>(a));
    for (int axis = 0; axis < 3; ++axis) {
      const int fwd = nb[2 * axis + 1];
      const double diff = (fwd == kNoNeighbor ? 0.0 : v[fwd]) - v[a];
      sum += diff * diff;
      if (nb[2 * axis] == kNoNeighbor) sum += v[a] * v[a];
    }
  }
  return sum * domain.spacing();
}

double l2_inner(const ScalarField& u, const ScalarField& v) {
  require_same(u, v);
  const auto a = u.values();
  const auto b = v.values();
  double sum = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) sum += a[n] * b[n];
  const double h = u.domain()->spacing();
  return sum * h * h * h;
}

double l2_norm_sq(const ScalarField& u) { return l2_inner(u, u); }
double l2_norm(const ScalarField& u) { return std::sqrt(l2_norm_sq(u)); }

double sup_norm(const ScalarField& u) {
  double m = 0.0;
  for (double v : u.values()) m = std::max(m, std::abs(v));
  return m;
}

int argmax_abs(const ScalarField& u) {
  const auto v = u.values();
  int best = 0;
  for (std::size_t n = 1; n < v.size(); ++n)
    if (std::abs(v[n]) > std::abs(v[best])) best = static_cast<int>(n);
  return best;
}

double grad_norm_sq(const VectorField3& u) {
  return grad_norm_sq(u[0]) + grad_norm_sq(u[1]) + grad_norm_sq(u[2]);
}

double l2_norm_sq(const VectorField3& u) {
  return l2_norm_sq(u[0]) + l2_norm_sq(u[1]) + l2_norm_sq(u[2]);
}

double sup_norm(const VectorField3& u) {
  double m = 0.0;
  for (std::size_t n = 0; n < u[0].size(); ++n) {
    const int a = static_cast<int>(n);
    m = std::max(m, std::sqrt(u[0][a] * u[0][a] + u[1][a] * u[1][a] + u[2][a] * u[2][a]));
  }
  return m;
}

VectorField3 laplacian(const VectorField3& u) {
  return VectorField3({laplacian(u[0]), laplacian(u[1]), laplacian(u[2])});
}

}  // namespace sharpbound
