// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_GRID_HPP
#define PXLAP_GRID_HPP

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>

namespace pxlap {

using Vec2 = Eigen::Vector2d;
using Field = std::function<double(const Vec2&)>;

/// Axis-aligned box Omega in R^N, N in {1,2}. In 1D the second axis is unused
/// (lo[1] = 0, hi[1] = 1 internally so the measure formula stays uniform).
struct BoxDomain {
  int dim = 1;
  Vec2 lo = Vec2::Zero();
  Vec2 hi = Vec2::Ones();

  static BoxDomain interval(double a, double b);
  static BoxDomain rectangle(double ax, double bx, double ay, double by);

  double length(int axis) const { return hi[axis] - lo[axis]; }
  double measure() const;
  /// Euclidean diameter of the box.
  double diameter() const;
  bool contains(const Vec2& x) const;
};

/// Uniform tensor grid over a BoxDomain. Spacing h_i = length_i / (n_i - 1);
/// node ordering is axis-0 fastest.
struct Grid {
  BoxDomain domain;
  std::array<int, 2> nodes = {2, 1};

  static Grid make(const BoxDomain& dom, int n0, int n1 = 0);

  int node_count() const { return nodes[0] * (domain.dim == 2 ? nodes[1] : 1); }
  int cells(int axis) const { return nodes[axis] - 1; }
  double spacing(int axis) const {
    return domain.length(axis) / static_cast<double>(nodes[axis] - 1);
  }
  int node_index(int i, int j = 0) const { return i + nodes[0] * j; }
  Vec2 node_point(int flat_index) const;
  bool is_boundary_node(int flat_index) const;
  bool same_layout(const Grid& other) const;
};

/// Interpolation stencil for one evaluation point: up to 4 node indices with
/// multilinear weights. count == 0 encodes a point outside Omega (value 0).
struct Stencil {
  std::array<int, 4> node{};
  std::array<double, 4> w{};
  int count = 0;

  double eval(const Eigen::VectorXd& values) const {
    double v = 0.0;
    for (int k = 0; k < count; ++k) v += w[k] * values[node[k]];
    return v;
  }
};

/// Nodal function on a grid with zero extension outside the closed box.
/// Immutable after construction; operations return new objects.
class GridFunction {
public:
  GridFunction(Grid grid, Eigen::VectorXd values, bool pinned);

  const Grid& grid() const { return grid_; }
  const Eigen::VectorXd& values() const { return values_; }
  bool pinned() const { return pinned_; }

private:
  Grid grid_;
  Eigen::VectorXd values_;
  bool pinned_;
};

/// Multilinear stencil of a point; count = 0 outside the closed box.
Stencil make_stencil(const Grid& grid, const Vec2& x);

/// Sample g at the nodes. pin_boundary forces boundary nodes to exactly 0.
/// Non-finite samples abort (std::invalid_argument).
GridFunction interpolate(const Field& g, const Grid& grid, bool pin_boundary);

/// Multilinear evaluation inside the closed box, exactly 0 outside.
double eval(const GridFunction& u, const Vec2& x);

/// Max over nodes of |value| (the interpolant attains extrema at nodes).
double sup_norm(const GridFunction& u);

/// Nodal max(u - k, 0); requires k >= 0; preserves pinning.
GridFunction positive_part_minus_level(const GridFunction& u, double k);

/// Deterministic smooth test field: seed-driven sine series, zero on the box
/// boundary, grid-independent (suitable for refinement comparisons).
Field random_sine_field(const BoxDomain& dom, std::uint64_t seed, int terms,
                        double amplitude);

/// CSV with one row per node: coordinates then value.
void write_csv(const GridFunction& u, std::ostream& os);
std::string to_csv(const GridFunction& u);

/// Parse the CSV produced by write_csv back onto the given grid; throws
/// std::invalid_argument on row-count or coordinate mismatch.
GridFunction read_csv(const Grid& grid, std::istream& is, bool pinned);

} // namespace pxlap

#endif
