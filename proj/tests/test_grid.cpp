// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

#include "pxlap/grid.hpp"
#include "pxlap/rng.hpp"

using namespace pxlap;

TEST_CASE("box domain geometry") {
  BoxDomain iv = BoxDomain::interval(-1.0, 3.0);
  CHECK(iv.dim == 1);
  CHECK(iv.measure() == doctest::Approx(4.0));
  CHECK(iv.diameter() == doctest::Approx(4.0));
  CHECK(iv.contains(Vec2(0.0, 0.0)));
  CHECK(iv.contains(Vec2(-1.0, 0.0)));
  CHECK_FALSE(iv.contains(Vec2(3.0000001, 0.0)));

  BoxDomain rect = BoxDomain::rectangle(0.0, 2.0, 0.0, 1.0);
  CHECK(rect.dim == 2);
  CHECK(rect.measure() == doctest::Approx(2.0));
  CHECK(rect.diameter() == doctest::Approx(std::sqrt(5.0)));
  CHECK(rect.contains(Vec2(2.0, 1.0)));
  CHECK_FALSE(rect.contains(Vec2(1.0, 1.1)));

  CHECK_THROWS_AS(BoxDomain::interval(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(BoxDomain::rectangle(0.0, 1.0, 2.0, 2.0),
                  std::invalid_argument);
}

TEST_CASE("grid layout and node enumeration") {
  Grid g1 = Grid::make(BoxDomain::interval(0.0, 1.0), 5);
  CHECK(g1.node_count() == 5);
  CHECK(g1.spacing(0) == doctest::Approx(0.25));
  CHECK(g1.node_point(0)[0] == doctest::Approx(0.0));
  CHECK(g1.node_point(4)[0] == doctest::Approx(1.0));
  CHECK(g1.is_boundary_node(0));
  CHECK(g1.is_boundary_node(4));
  CHECK_FALSE(g1.is_boundary_node(2));

  Grid g2 = Grid::make(BoxDomain::rectangle(0.0, 1.0, 0.0, 2.0), 3, 5);
  CHECK(g2.node_count() == 15);
  CHECK(g2.spacing(0) == doctest::Approx(0.5));
  CHECK(g2.spacing(1) == doctest::Approx(0.5));
  // axis-0 fastest ordering
  CHECK(g2.node_index(2, 1) == 5);
  Vec2 p = g2.node_point(g2.node_index(1, 2));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == doctest::Approx(1.0));
  int boundary = 0;
  for (int i = 0; i < g2.node_count(); ++i)
    if (g2.is_boundary_node(i)) ++boundary;
  CHECK(boundary == 12); // all but the 1x3 interior strip

  CHECK_THROWS_AS(Grid::make(BoxDomain::interval(0.0, 1.0), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(Grid::make(BoxDomain::rectangle(0, 1, 0, 1), 3, 1),
                  std::invalid_argument);
  // omitted second node count falls back to the first
  CHECK(Grid::make(BoxDomain::rectangle(0, 1, 0, 1), 3).node_count() == 9);
}

TEST_CASE("interpolation reproduces multilinear functions exactly") {
  Grid g = Grid::make(BoxDomain::rectangle(0.0, 1.0, 0.0, 1.0), 4, 4);
  Field f = [](const Vec2& x) {
    return 2.0 + 3.0 * x[0] - x[1] + 0.5 * x[0] * x[1];
  };
  GridFunction u = interpolate(f, g, false);
  Rng check_points(42);
  for (int t = 0; t < 50; ++t) {
    Vec2 x(check_points.uniform(), check_points.uniform());
    CHECK(eval(u, x) == doctest::Approx(f(x)).epsilon(1e-12));
  }
  // zero extension outside the closed box
  CHECK(eval(u, Vec2(1.5, 0.5)) == 0.0);
  CHECK(eval(u, Vec2(-0.01, 0.5)) == 0.0);
}

TEST_CASE("stencils partition unity and respect pinning") {
  Grid g = Grid::make(BoxDomain::interval(0.0, 1.0), 9);
  Stencil st = make_stencil(g, Vec2(0.33, 0.0));
  double wsum = 0.0;
  for (int k = 0; k < st.count; ++k) wsum += st.w[k];
  CHECK(wsum == doctest::Approx(1.0));
  CHECK(make_stencil(g, Vec2(1.25, 0.0)).count == 0);

  Field f = [](const Vec2& x) { return 1.0 + x[0]; };
  GridFunction pinned = interpolate(f, g, true);
  CHECK(pinned.values()[0] == 0.0);
  CHECK(pinned.values()[8] == 0.0);
  CHECK(pinned.pinned());
}

TEST_CASE("sup norm and level truncation") {
  Grid g = Grid::make(BoxDomain::interval(0.0, 1.0), 11);
  GridFunction u = interpolate(
      [](const Vec2& x) { return x[0] - 0.5; }, g, false);
  CHECK(sup_norm(u) == doctest::Approx(0.5));

  GridFunction trunc = positive_part_minus_level(u, 0.2);
  CHECK(sup_norm(trunc) == doctest::Approx(0.3));
  for (int i = 0; i < g.node_count(); ++i)
    CHECK(trunc.values()[i] >= 0.0);
  CHECK_THROWS_AS(positive_part_minus_level(u, -0.1), std::invalid_argument);
}

TEST_CASE("random sine fields are boundary-zero and grid independent") {
  BoxDomain dom = BoxDomain::rectangle(0.0, 1.0, 0.0, 1.0);
  Field f = random_sine_field(dom, 7, 3, 0.8);
  CHECK(f(Vec2(0.0, 0.3)) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(f(Vec2(0.4, 1.0)) == doctest::Approx(0.0).epsilon(1e-14));
  // same seed, same field
  Field f2 = random_sine_field(dom, 7, 3, 0.8);
  CHECK(f(Vec2(0.37, 0.61)) == f2(Vec2(0.37, 0.61)));
  // coefficient-sum bound: |f| <= amplitude * sum_{k,l<3} 1/(k+l+1) = 3.7 A
  Rng probe(3);
  for (int t = 0; t < 100; ++t) {
    Vec2 x(probe.uniform(), probe.uniform());
    CHECK(std::abs(f(x)) <= 3.7 * 0.8 + 1e-12);
  }
}

TEST_CASE("csv round trip is exact and validated") {
  Grid g = Grid::make(BoxDomain::interval(0.0, 1.0), 7);
  GridFunction u = interpolate(
      [](const Vec2& x) { return std::sin(3.0 * x[0]) / 3.0; }, g, true);
  std::string csv = to_csv(u);
  std::istringstream is(csv);
  GridFunction back = read_csv(g, is, true);
  for (int i = 0; i < g.node_count(); ++i)
    CHECK(back.values()[i] == u.values()[i]); // bitwise via %.17g

  // wrong grid is rejected
  Grid other = Grid::make(BoxDomain::interval(0.0, 1.0), 9);
  std::istringstream is2(csv);
  CHECK_THROWS_AS(read_csv(other, is2, true), std::invalid_argument);
}
