// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pxlap/rng.hpp"

namespace pxlap {

BoxDomain BoxDomain::interval(double a, double b) {
  if (!(a < b)) throw std::invalid_argument("BoxDomain: need a < b");
  BoxDomain d;
  d.dim = 1;
  d.lo = Vec2(a, 0.0);
  d.hi = Vec2(b, 1.0);
  return d;
}

BoxDomain BoxDomain::rectangle(double ax, double bx, double ay, double by) {
  if (!(ax < bx) || !(ay < by))
    throw std::invalid_argument("BoxDomain: need a_i < b_i on both axes");
  BoxDomain d;
  d.dim = 2;
  d.lo = Vec2(ax, ay);
  d.hi = Vec2(bx, by);
  return d;
}

double BoxDomain::measure() const {
  double m = length(0);
  if (dim == 2) m *= length(1);
  return m;
}

double BoxDomain::diameter() const {
  double d2 = length(0) * length(0);
  if (dim == 2) d2 += length(1) * length(1);
  return std::sqrt(d2);
}

bool BoxDomain::contains(const Vec2& x) const {
  for (int a = 0; a < dim; ++a)
    if (x[a] < lo[a] || x[a] > hi[a]) return false;
  return true;
}

Grid Grid::make(const BoxDomain& dom, int n0, int n1) {
  Grid g;
  g.domain = dom;
  if (dom.dim == 1) {
    if (n0 < 2) throw std::invalid_argument("Grid: need >= 2 nodes per axis");
    g.nodes = {n0, 1};
  } else {
    if (n1 == 0) n1 = n0;
    if (n0 < 2 || n1 < 2)
      throw std::invalid_argument("Grid: need >= 2 nodes per axis");
    g.nodes = {n0, n1};
  }
  return g;
}

Vec2 Grid::node_point(int flat_index) const {
  int i = flat_index % nodes[0];
  int j = flat_index / nodes[0];
  Vec2 x = domain.lo;
  x[0] += spacing(0) * i;
  if (domain.dim == 2) x[1] += spacing(1) * j;
  return x;
}

bool Grid::is_boundary_node(int flat_index) const {
  int i = flat_index % nodes[0];
  if (i == 0 || i == nodes[0] - 1) return true;
  if (domain.dim == 2) {
    int j = flat_index / nodes[0];
    if (j == 0 || j == nodes[1] - 1) return true;
  }
  return false;
}

bool Grid::same_layout(const Grid& other) const {
  return domain.dim == other.domain.dim && nodes == other.nodes &&
         (domain.lo - other.domain.lo).norm() == 0.0 &&
         (domain.hi - other.domain.hi).norm() == 0.0;
}

GridFunction::GridFunction(Grid grid, Eigen::VectorXd values, bool pinned)
    : grid_(grid), values_(std::move(values)), pinned_(pinned) {
  if (values_.size() != grid_.node_count())
    throw std::invalid_argument("GridFunction: value count != node count");
  if (pinned_) {
    for (int k = 0; k < values_.size(); ++k)
      if (grid_.is_boundary_node(k)) values_[k] = 0.0;
  }
}

Stencil make_stencil(const Grid& grid, const Vec2& x) {
  Stencil s;
  if (!grid.domain.contains(x)) return s;
  const int n0 = grid.nodes[0];
  // Clamped cell index and barycentric coordinate per axis.
  int ci[2] = {0, 0};
  double t[2] = {0.0, 0.0};
  for (int a = 0; a < grid.domain.dim; ++a) {
    double h = grid.spacing(a);
    double rel = (x[a] - grid.domain.lo[a]) / h;
    int c = static_cast<int>(std::floor(rel));
    if (c < 0) c = 0;
    if (c > grid.nodes[a] - 2) c = grid.nodes[a] - 2;
    ci[a] = c;
    t[a] = rel - c;
  }
  if (grid.domain.dim == 1) {
    s.count = 2;
    s.node = {ci[0], ci[0] + 1, 0, 0};
    s.w = {1.0 - t[0], t[0], 0.0, 0.0};
  } else {
    s.count = 4;
    int base = ci[0] + n0 * ci[1];
    s.node = {base, base + 1, base + n0, base + n0 + 1};
    s.w = {(1.0 - t[0]) * (1.0 - t[1]), t[0] * (1.0 - t[1]),
           (1.0 - t[0]) * t[1], t[0] * t[1]};
  }
  return s;
}

GridFunction interpolate(const Field& g, const Grid& grid, bool pin_boundary) {
  Eigen::VectorXd v(grid.node_count());
  for (int k = 0; k < v.size(); ++k) {
    double val = g(grid.node_point(k));
    if (!std::isfinite(val))
      throw std::invalid_argument("interpolate: non-finite sample at node " +
                                  std::to_string(k));
    v[k] = val;
  }
  return GridFunction(grid, std::move(v), pin_boundary);
}

double eval(const GridFunction& u, const Vec2& x) {
  Stencil s = make_stencil(u.grid(), x);
  return s.eval(u.values());
}

double sup_norm(const GridFunction& u) {
  return u.values().size() == 0 ? 0.0 : u.values().cwiseAbs().maxCoeff();
}

GridFunction positive_part_minus_level(const GridFunction& u, double k) {
  if (k < 0.0)
    throw std::invalid_argument("positive_part_minus_level: need k >= 0");
  Eigen::VectorXd v = (u.values().array() - k).cwiseMax(0.0).matrix();
  return GridFunction(u.grid(), std::move(v), u.pinned());
}

Field random_sine_field(const BoxDomain& dom, std::uint64_t seed, int terms,
                        double amplitude) {
  Rng rng(seed);
  const double pi = 3.14159265358979323846;
  if (dom.dim == 1) {
    std::vector<double> c(terms);
    for (int k = 0; k < terms; ++k)
      c[k] = amplitude * rng.symmetric() / static_cast<double>(k + 1);
    double a = dom.lo[0], len = dom.length(0);
    return [c, a, len, pi](const Vec2& x) {
      double t = (x[0] - a) / len;
      double v = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k)
        v += c[k] * std::sin((k + 1) * pi * t);
      return v;
    };
  }
  std::vector<double> c(static_cast<std::size_t>(terms) * terms);
  for (int k = 0; k < terms; ++k)
    for (int l = 0; l < terms; ++l)
      c[k * terms + l] = amplitude * rng.symmetric() / static_cast<double>(k + l + 1);
  Vec2 lo = dom.lo;
  Vec2 len(dom.length(0), dom.length(1));
  int T = terms;
  return [c, lo, len, T, pi](const Vec2& x) {
    double t0 = (x[0] - lo[0]) / len[0];
    double t1 = (x[1] - lo[1]) / len[1];
    double v = 0.0;
    for (int k = 0; k < T; ++k)
      for (int l = 0; l < T; ++l)
        v += c[k * T + l] * std::sin((k + 1) * pi * t0) * std::sin((l + 1) * pi * t1);
    return v;
  };
}

namespace {
// Canonical shortest-round-trip formatting so runs are byte-reproducible.
std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
} // namespace

void write_csv(const GridFunction& u, std::ostream& os) {
  const Grid& g = u.grid();
  os << (g.domain.dim == 1 ? "x,value\n" : "x,y,value\n");
  for (int k = 0; k < g.node_count(); ++k) {
    Vec2 x = g.node_point(k);
    os << fmt_double(x[0]);
    if (g.domain.dim == 2) os << ',' << fmt_double(x[1]);
    os << ',' << fmt_double(u.values()[k]) << '\n';
  }
}

std::string to_csv(const GridFunction& u) {
  std::ostringstream os;
  write_csv(u, os);
  return os.str();
}

GridFunction read_csv(const Grid& grid, std::istream& is, bool pinned) {
  std::string line;
  if (!std::getline(is, line))
    throw std::invalid_argument("solution csv: empty file");
  Eigen::VectorXd v(grid.node_count());
  int row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (row >= grid.node_count())
      throw std::invalid_argument("solution csv: more rows than grid nodes");
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    double c0 = 0, c1 = 0, val = 0;
    if (grid.domain.dim == 1) {
      if (!(ls >> c0 >> val))
        throw std::invalid_argument("solution csv: bad row " + std::to_string(row + 2));
    } else {
      if (!(ls >> c0 >> c1 >> val))
        throw std::invalid_argument("solution csv: bad row " + std::to_string(row + 2));
    }
    Vec2 x = grid.node_point(row);
    double h = grid.spacing(0);
    if (std::abs(c0 - x[0]) > 1e-9 * h ||
        (grid.domain.dim == 2 && std::abs(c1 - x[1]) > 1e-9 * grid.spacing(1)))
      throw std::invalid_argument("solution csv: node coordinates do not match grid (row " +
                                  std::to_string(row + 2) + ")");
    v[row] = val;
    ++row;
  }
  if (row != grid.node_count())
    throw std::invalid_argument("solution csv: fewer rows than grid nodes");
  return GridFunction(grid, std::move(v), pinned);
}

} // namespace pxlap
