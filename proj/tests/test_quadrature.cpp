// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"

#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/quadrature.hpp"

using namespace pxlap;

namespace {

const BoxDomain kUnit = BoxDomain::interval(0.0, 1.0);
const BoxDomain kSquare = BoxDomain::rectangle(0.0, 1.0, 0.0, 1.0);

GridFunction linear_1d(const Grid& g) {
  return interpolate([](const Vec2& x) { return x[0]; }, g, false);
}

/// Gagliardo modular of u(x) = x on the unit interval with constant p, s:
/// 2 / (kappa (kappa + 1)) with kappa = p (1 - s).
double interval_oracle(double p, double s) {
  double kappa = p * (1.0 - s);
  return 2.0 / (kappa * (kappa + 1.0));
}

} // namespace

TEST_CASE("local quadrature integrates multilinear functions exactly") {
  Grid g1 = Grid::make(kUnit, 9);
  LocalQuadrature lq1 = LocalQuadrature::build(g1, 3);
  GridFunction u1 = linear_1d(g1);
  // weights partition the measure
  CHECK(lq1.integrate(u1, [](const Vec2&, double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-13));
  // midpoint rule is exact on linear integrands
  CHECK(lq1.integrate(u1, [](const Vec2&, double v) { return v; }) ==
        doctest::Approx(0.5).epsilon(1e-13));

  Grid g2 = Grid::make(kSquare, 5, 4);
  LocalQuadrature lq2 = LocalQuadrature::build(g2, 2);
  GridFunction u2 = interpolate(
      [](const Vec2& x) { return 1.0 + 2.0 * x[0] - x[1] + 3.0 * x[0] * x[1]; },
      g2, false);
  // tensor midpoint rule is exact on bilinear integrands: 1 + 1 - 1/2 + 3/4
  CHECK(lq2.integrate(u2, [](const Vec2&, double v) { return v; }) ==
        doctest::Approx(2.25).epsilon(1e-13));

  CHECK_THROWS_AS(LocalQuadrature::build(g1, 0), std::invalid_argument);
}

TEST_CASE("local pairing approximates the L2 inner product") {
  Grid g = Grid::make(kUnit, 9);
  LocalQuadrature lq = LocalQuadrature::build(g, 4);
  GridFunction u = linear_1d(g);
  GridFunction v = interpolate([](const Vec2& x) { return 2.0 - x[0]; }, g,
                               false);
  // integral of x (2 - x) over (0,1) = 2/3, midpoint error O(h^2)
  CHECK(lq.pairing(u, v) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));

  Grid other = Grid::make(kUnit, 7);
  GridFunction w = linear_1d(other);
  CHECK_THROWS_AS(lq.pairing(u, w), std::invalid_argument);
}

TEST_CASE("modular samples evaluate the scaled power sum") {
  ModularSamples s;
  s.add(2.0, 2.0, 3.0);
  CHECK(s.value(1.0) == doctest::Approx(12.0));
  CHECK(s.value(2.0) == doctest::Approx(3.0));
  CHECK(s.value(0.5) == doctest::Approx(48.0));
  CHECK(s.value_at_one() == doctest::Approx(12.0));

  // zero-coefficient samples do not contribute to the bracket seed
  s.add(5.0, 2.0, 0.0);
  CHECK(s.max_amp() == 2.0);

  ModularSamples t;
  t.add(-7.0, 3.0, 1.0); // amplitudes enter through their absolute value
  s.append(t);
  CHECK(s.size() == 3);
  CHECK(s.max_amp() == 7.0);
  CHECK(s.value(7.0) == doctest::Approx(3.0 * std::pow(2.0 / 7.0, 2.0) + 1.0));
}

TEST_CASE("luxemburg bisection solves the unit-modular equation") {
  // single sample: c (a/lambda)^e = 1 iff lambda = a c^(1/e)
  ModularSamples s;
  s.add(0.7, 3.0, 2.0);
  LuxemburgResult r = luxemburg_root(s);
  CHECK(r.norm == doctest::Approx(0.7 * std::cbrt(2.0)).epsilon(1e-9));
  CHECK(r.residual <= 1e-8);
  CHECK(s.value(r.norm) == doctest::Approx(1.0).epsilon(1e-8));

  // exact homogeneity: scaling the amplitudes scales the norm
  ModularSamples s2;
  s2.add(1.4, 3.0, 2.0);
  CHECK(luxemburg_root(s2).norm == doctest::Approx(2.0 * r.norm).epsilon(1e-9));

  // identically vanishing modular has norm zero by convention
  ModularSamples z;
  z.add(0.0, 2.0, 1.0);
  CHECK(luxemburg_root(z).norm == 0.0);
  CHECK(luxemburg_root(ModularSamples{}).norm == 0.0);

  // non-finite data aborts instead of looping
  ModularSamples bad;
  bad.add(1.0, 2.0, std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(luxemburg_root(bad), std::runtime_error);
}

TEST_CASE("interval seminorm modular matches the closed form") {
  Grid g = Grid::make(kUnit, 33);
  GridFunction u = linear_1d(g);
  struct Combo { double p, s, tol; };
  // kappa = 1 (p = 2, s = 1/2) makes the integrand constant: exact at any
  // resolution. The others carry the measured quadrature error, which grows
  // as kappa = p (1 - s) drops below one (rougher kernel singularity).
  const Combo combos[] = {
      {1.5, 0.25, 5e-4}, {1.5, 0.5, 3e-3}, {2.0, 0.25, 5e-4},
      {2.0, 0.5, 1e-9},  {3.0, 0.25, 5e-4}, {3.0, 0.5, 5e-4},
  };
  for (const Combo& c : combos) {
    CAPTURE(c.p);
    CAPTURE(c.s);
    PairExponent p = constant_pair_exponent(kUnit, c.p, c.s);
    PairQuadrature q =
        PairQuadrature::build(g, p, PairRegion::omega_omega);
    CHECK(q.modular(u) ==
          doctest::Approx(interval_oracle(c.p, c.s)).epsilon(c.tol));
  }
}

TEST_CASE("interval modular error halves under grid refinement") {
  PairExponent p = constant_pair_exponent(kUnit, 1.5, 0.25);
  const double exact = interval_oracle(1.5, 0.25);
  double err[3];
  const int nodes[3] = {17, 33, 65};
  for (int k = 0; k < 3; ++k) {
    Grid g = Grid::make(kUnit, nodes[k]);
    PairQuadrature q = PairQuadrature::build(g, p, PairRegion::omega_omega);
    err[k] = std::abs(q.modular(linear_1d(g)) - exact) / exact;
  }
  CHECK(err[1] < 0.65 * err[0]);
  CHECK(err[2] < 0.65 * err[1]);
}

TEST_CASE("square seminorm modular matches the frozen reference values") {
  // Gagliardo modular of u(x) = x_0 on the unit square, reduced to a 1D
  // angular integral and evaluated to 17 digits with extended precision.
  Grid g = Grid::make(kSquare, 17, 17);
  GridFunction u = interpolate([](const Vec2& x) { return x[0]; }, g, false);

  struct Combo { double p, s, exact, tol; };
  const Combo combos[] = {
      {2.0, 0.5, 1.4866047991236894, 1e-2},  // kappa = 1: roughest kernel
      {3.0, 0.25, 0.35024796985513872, 2e-4},
      {2.0, 0.4, 1.1241544974093402, 2e-3},
  };
  for (const Combo& c : combos) {
    CAPTURE(c.p);
    CAPTURE(c.s);
    PairExponent p = constant_pair_exponent(kSquare, c.p, c.s);
    PairQuadrature q = PairQuadrature::build(g, p, PairRegion::omega_omega);
    CHECK(q.modular(u) == doctest::Approx(c.exact).epsilon(c.tol));
  }
}

TEST_CASE("full region dominates the interior region") {
  Grid g = Grid::make(kUnit, 17);
  GridFunction u = linear_1d(g);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  PairQuadrature inner =
      PairQuadrature::build(g, p, PairRegion::omega_omega);
  PairQuadrature full = PairQuadrature::build(g, p, PairRegion::full);

  // the full region adds the nonnegative exterior interaction
  CHECK(full.modular(u) > inner.modular(u));

  CHECK(inner.stats().tail_samples == 0);
  CHECK(inner.stats().exterior_cells == 0);
  CHECK(inner.stats().diag_samples > 0);
  CHECK(full.stats().tail_samples > 0);
  CHECK(full.stats().exterior_cells > 0);
  CHECK(full.stats().interior_cells == inner.stats().interior_cells);
}

TEST_CASE("weak form at u equals the modular for constant exponents") {
  Grid g = Grid::make(kUnit, 17);
  GridFunction u = interpolate(random_sine_field(kUnit, 5, 3, 1.0), g, true);
  for (double pv : {2.0, 3.0}) {
    CAPTURE(pv);
    PairExponent p = constant_pair_exponent(kUnit, pv, 0.4);
    for (PairRegion region : {PairRegion::omega_omega, PairRegion::full}) {
      PairQuadrature q = PairQuadrature::build(g, p, region);
      double m = q.modular(u);
      CHECK(q.weak(u, u) == doctest::Approx(m).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy gradient matches central differences") {
  Grid g = Grid::make(kUnit, 9);
  GridFunction u = interpolate(random_sine_field(kUnit, 11, 2, 0.7), g, true);
  PairExponent p = constant_pair_exponent(kUnit, 2.5, 0.4);
  PairQuadrature q = PairQuadrature::build(g, p, PairRegion::full);

  Eigen::VectorXd grad = Eigen::VectorXd::Zero(g.node_count());
  q.add_gradient(u, grad);

  const double h = 1e-6;
  for (int i = 2; i <= 6; i += 2) {
    Eigen::VectorXd vp = u.values(), vm = u.values();
    vp[i] += h;
    vm[i] -= h;
    double fd = (q.energy(GridFunction(g, vp, false)) -
                 q.energy(GridFunction(g, vm, false))) /
                (2.0 * h);
    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-5));
  }

  Eigen::VectorXd wrong = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(q.add_gradient(u, wrong), std::invalid_argument);
}

TEST_CASE("transposition preserves the modular") {
  Grid g = Grid::make(kUnit, 17);
  GridFunction u = interpolate(random_sine_field(kUnit, 3, 3, 1.0), g, true);
  PairExponent p = affine_trace_exponent(kUnit, 2.0, Vec2(0.5, 0.0), 0.4);
  PairQuadrature q = PairQuadrature::build(g, p, PairRegion::omega_omega);
  PairQuadrature qt = q.transposed();
  CHECK(qt.modular(u) == doctest::Approx(q.modular(u)).epsilon(1e-13));
}

TEST_CASE("pair quadrature rejects inconsistent inputs") {
  Grid g = Grid::make(kUnit, 9);
  PairExponent p_other =
      constant_pair_exponent(BoxDomain::interval(0.0, 2.0), 2.0, 0.4);
  CHECK_THROWS_AS(
      PairQuadrature::build(g, p_other, PairRegion::omega_omega),
      std::invalid_argument);

  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  PairQuadratureOptions bad_refine;
  bad_refine.refine = 0;
  CHECK_THROWS_AS(
      PairQuadrature::build(g, p, PairRegion::omega_omega, bad_refine),
      std::invalid_argument);
  PairQuadratureOptions bad_angular;
  bad_angular.angular_nodes = 3;
  CHECK_THROWS_AS(
      PairQuadrature::build(g, p, PairRegion::omega_omega, bad_angular),
      std::invalid_argument);
  PairQuadratureOptions short_collar;
  short_collar.collar_width = 0.5; // below the domain diameter
  CHECK_THROWS_AS(PairQuadrature::build(g, p, PairRegion::full, short_collar),
                  std::invalid_argument);

  PairQuadrature q = PairQuadrature::build(g, p, PairRegion::omega_omega);
  GridFunction w = linear_1d(Grid::make(kUnit, 7));
  CHECK_THROWS_AS(q.modular(w), std::invalid_argument);
}
