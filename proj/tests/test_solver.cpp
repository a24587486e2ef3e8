// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>

#include "doctest.h"

#include "pxlap/solver.hpp"

using namespace pxlap;

namespace {

const BoxDomain kUnit = BoxDomain::interval(0.0, 1.0);

ScalarExponent r135() { return constant_exponent(kUnit, 1.35); }
ScalarExponent q4() { return constant_exponent(kUnit, 4.0); }

Nonlinearity proto() { return prototype_nonlinearity(1.2, r135(), q4()); }

CutoffProfile cut_with_beta(double t2, double p_minus, double p_plus) {
  CutoffProfile cut = cutoff_default(t2);
  cut.beta = beta_default(p_minus, p_plus, 1.0);
  return cut;
}

EnergyAssembly default_assembly(int nodes = 33) {
  Grid g = Grid::make(kUnit, nodes);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  return EnergyAssembly::build(g, p, {}, 2, true);
}

} // namespace

TEST_CASE("prototype reaction satisfies its declared sample checks") {
  Nonlinearity nl = proto();
  Vec2 x(0.4, 0.0);
  // two-well shape: positive near zero (lambda-term dominates), negative far
  CHECK(nl.f(x, 0.1) > 0.0);
  CHECK(nl.f(x, 2.0) < 0.0);
  CHECK(nl.F(x, 0.0) == 0.0);
  CHECK(nl.f(x, 0.5) == doctest::Approx(-nl.f(x, -0.5)).epsilon(1e-12));

  for (const CheckItem& item : check_nonlinearity(nl, 3.0)) {
    CAPTURE(item.name);
    CHECK(item.passed);
  }
  for (const CheckItem& item :
       check_nonlinearity(zero_nonlinearity(kUnit), 3.0)) {
    CAPTURE(item.name);
    CHECK(item.passed);
  }

  CHECK_THROWS_AS(prototype_nonlinearity(0.0, r135(), q4()),
                  std::invalid_argument);
  // the wells must be ordered: r(x) < q(x) everywhere
  CHECK_THROWS_AS(prototype_nonlinearity(1.0, q4(), q4()),
                  std::invalid_argument);
}

TEST_CASE("cutoff profile plateau, support and derivative bound") {
  CutoffProfile cut = cut_with_beta(0.12, 2.0, 2.0);
  CHECK(cut.rho(0.0) == 1.0);
  CHECK(cut.rho(0.12) == doctest::Approx(1.0));
  CHECK(cut.rho(-0.05) == 1.0);
  CHECK(cut.rho(0.24) == doctest::Approx(0.0));
  CHECK(cut.rho(5.0) == 0.0);
  CHECK(std::abs(cut.drho(0.18)) <= 2.0 / 0.12 + 1e-12);

  // 0.9 * min{1/2, 1/(2 * 2^2 * 1)} = 0.9/8
  CHECK(cut.beta == doctest::Approx(0.1125));

  for (const CheckItem& item : check_cutoff(cut, 2.0, 2.0, 1.0)) {
    CAPTURE(item.name);
    CHECK(item.passed);
  }

  CHECK_THROWS_AS(cutoff_default(0.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_default(0.5, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("modified reaction agrees inside the plateau and is replaced far") {
  CutoffProfile cut = cut_with_beta(0.12, 2.0, 2.0);
  Nonlinearity base = proto();
  Nonlinearity mod = modified_nonlinearity(base, cut, 2.0);
  Vec2 x(0.3, 0.0);
  // inside |t| <= t2 nothing changes
  CHECK(mod.F(x, 0.1) == doctest::Approx(base.F(x, 0.1)).epsilon(1e-14));
  CHECK(mod.f(x, -0.08) == doctest::Approx(base.f(x, -0.08)).epsilon(1e-14));
  // beyond 2 t2 only the replacement well survives: beta |t|^2
  CHECK(mod.F(x, 1.0) == doctest::Approx(cut.beta));
  CHECK(mod.f(x, 1.0) == doctest::Approx(2.0 * cut.beta));

  for (const CheckItem& item : check_nonlinearity(mod, 3.0)) {
    CAPTURE(item.name);
    CHECK(item.passed);
  }

  // a base reaction without a small-t well fails the sign condition
  Nonlinearity shallow = prototype_nonlinearity(
      1.0, constant_exponent(kUnit, 3.0), q4());
  CHECK_THROWS_AS(modified_nonlinearity(shallow, cut, 2.0),
                  std::invalid_argument);
  Nonlinearity tolerated = modified_nonlinearity(shallow, cut, 2.0, false);
  CHECK(tolerated.tag.find("defect-negative") != std::string::npos);

  CutoffProfile no_beta = cutoff_default(0.12);
  CHECK_THROWS_AS(modified_nonlinearity(base, no_beta, 2.0),
                  std::invalid_argument);
}

TEST_CASE("energy gradient matches central differences") {
  Grid g = Grid::make(kUnit, 17);
  PairExponent p = affine_trace_exponent(kUnit, 1.8, Vec2(0.4, 0.0), 0.4);
  EnergyAssembly a = EnergyAssembly::build(g, p);
  GridFunction u = interpolate(random_sine_field(kUnit, 23, 3, 0.8), g, true);

  Eigen::VectorXd grad = a.grad_phi(u);
  CHECK(grad[0] == 0.0);
  CHECK(grad[16] == 0.0);
  const double h = 1e-6;
  for (int i : {3, 7, 12}) {
    Eigen::VectorXd vp = u.values(), vm = u.values();
    vp[i] += h;
    vm[i] -= h;
    double fd = (a.phi(GridFunction(g, vp, true)) -
                 a.phi(GridFunction(g, vm, true))) / (2.0 * h);
    CHECK(grad[i] == doctest::Approx(fd).epsilon(1e-4));
  }

  Nonlinearity nl = proto();
  Eigen::VectorXd gF = a.grad_F(u, nl);
  CHECK(gF[0] == 0.0);
  for (int i : {4, 9}) {
    Eigen::VectorXd vp = u.values(), vm = u.values();
    vp[i] += h;
    vm[i] -= h;
    double fd = (a.integral_F(GridFunction(g, vp, true), nl) -
                 a.integral_F(GridFunction(g, vm, true), nl)) / (2.0 * h);
    CHECK(gF[i] == doctest::Approx(fd).epsilon(1e-4));
  }
}

TEST_CASE("space norm is positively homogeneous") {
  EnergyAssembly a = default_assembly(17);
  GridFunction u = interpolate(random_sine_field(kUnit, 31, 3, 1.0),
                               a.grid, true);
  Eigen::VectorXd doubled = 2.0 * u.values();
  GridFunction u2(a.grid, doubled, true);
  CHECK(a.x_norm(u2) == doctest::Approx(2.0 * a.x_norm(u)).epsilon(1e-9));
  CHECK(a.x_norm(u) > 0.0);
}

TEST_CASE("descent without a reaction collapses to zero") {
  EnergyAssembly a = default_assembly(17);
  Nonlinearity none = zero_nonlinearity(kUnit);
  GridFunction start = interpolate(random_sine_field(kUnit, 41, 3, 0.5),
                                   a.grid, true);
  SolveReport rep = minimize_energy(start, a, none);
  CHECK(rep.converged);
  CHECK(rep.sup < 1e-4);
  for (std::size_t k = 1; k < rep.energy_history.size(); ++k)
    CHECK(rep.energy_history[k] <= rep.energy_history[k - 1] + 1e-15);

  // the start must be pinned and live on the assembly grid
  GridFunction raw = interpolate([](const Vec2& x) { return x[0]; },
                                 a.grid, false);
  CHECK_THROWS_AS(minimize_energy(raw, a, none), std::invalid_argument);
  GridFunction off = interpolate(random_sine_field(kUnit, 1, 2, 0.1),
                                 Grid::make(kUnit, 9), true);
  CHECK_THROWS_AS(minimize_energy(off, a, none), std::invalid_argument);
}

TEST_CASE("descent on the two-well reaction finds a small solution") {
  EnergyAssembly a = default_assembly();
  CutoffProfile cut = cut_with_beta(0.12, a.p_minus, a.p_plus);
  Nonlinearity mod = modified_nonlinearity(proto(), cut, a.p_minus);
  GridFunction start = bump_basis(a.grid, 1)[0];
  Eigen::VectorXd half = 0.5 * start.values();
  SolveReport rep = minimize_energy(GridFunction(a.grid, half, true), a, mod);
  CHECK(rep.converged);
  CHECK(rep.residual <= 1e-6);
  CHECK(rep.energy < 0.0);
  CHECK(rep.sup > 0.0);
  CHECK(rep.sup <= cut.t2); // inside the plateau: solves the original problem
  for (std::size_t k = 1; k < rep.energy_history.size(); ++k)
    CHECK(rep.energy_history[k] <= rep.energy_history[k - 1] + 1e-15);
}

TEST_CASE("multistart finds the symmetric pair of minimizers") {
  EnergyAssembly a = default_assembly();
  CutoffProfile cut = cut_with_beta(0.12, a.p_minus, a.p_plus);
  Nonlinearity mod = modified_nonlinearity(proto(), cut, a.p_minus);
  std::vector<SolveReport> found =
      multistart_small_solutions(8, a, mod, cut.t2);
  REQUIRE(found.size() >= 2);
  for (const SolveReport& rep : found) {
    CHECK(rep.converged);
    CHECK(rep.energy < 0.0);
    CHECK(rep.flagged_small);
    CHECK(rep.sup > 0.0);
  }
  for (std::size_t i = 0; i < found.size(); ++i)
    for (std::size_t j = i + 1; j < found.size(); ++j)
      CHECK(l2_distance(found[i].solution, found[j].solution) > 1e-4);

  // an odd reaction makes the energy even: the first two entries mirror
  Eigen::VectorXd negated = -found[1].solution.values();
  CHECK(l2_distance(found[0].solution, GridFunction(a.grid, negated, true)) <
        1e-3);
  CHECK(found[0].energy == doctest::Approx(found[1].energy).epsilon(1e-6));

  CHECK_THROWS_AS(multistart_small_solutions(0, a, mod, cut.t2),
                  std::invalid_argument);
}

TEST_CASE("discrete monotonicity probe stays nonnegative") {
  EnergyAssembly a = default_assembly(17);
  SplusReport rep = splus_probe(a, 6, 900);
  CHECK(rep.trials == 6);
  CHECK(rep.passed);
  CHECK(rep.min_pairing >= -1e-10);
  CHECK_THROWS_AS(splus_probe(a, 0, 1), std::invalid_argument);
}

TEST_CASE("bump basis spans disjoint pinned bumps") {
  Grid g = Grid::make(kUnit, 17);
  std::vector<GridFunction> basis = bump_basis(g, 3);
  REQUIRE(basis.size() == 3);
  for (const GridFunction& b : basis) {
    CHECK(b.pinned());
    CHECK(sup_norm(b) > 0.0);
  }
  for (int i = 0; i < g.node_count(); ++i) {
    int active = 0;
    for (const GridFunction& b : basis)
      if (b.values()[i] != 0.0) ++active;
    CHECK(active <= 1); // supports never overlap
  }
  CHECK_THROWS_AS(bump_basis(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(bump_basis(Grid::make(kUnit, 5), 3), std::invalid_argument);
}

TEST_CASE("subspace energies are negative on the small sphere") {
  EnergyAssembly a = default_assembly();
  CutoffProfile cut = cut_with_beta(0.12, a.p_minus, a.p_plus);
  Nonlinearity base = proto();
  for (int n : {1, 2, 3}) {
    CAPTURE(n);
    SubspaceReport rep = subspace_negativity(n, a, base, cut);
    CHECK(rep.n == n);
    CHECK(rep.passed);
    CHECK(rep.sup_sample < 0.0);
    CHECK(rep.sign_ok);
    CHECK_FALSE(rep.scan_failed);
    CHECK(rep.c_n1 > 0.0);
    CHECK(rep.c_n2 >= rep.c_n1);
    CHECK(rep.r_n > 0.0);
    CHECK(rep.r_n <= 0.5);
    CHECK(rep.t3 > 0.0);
    CHECK(rep.t3 <= cut.t2);
  }

  // without a reaction the scan finds no well and the probe fails honestly
  SubspaceReport control =
      subspace_negativity(2, a, zero_nonlinearity(kUnit), cut);
  CHECK_FALSE(control.passed);
  CHECK(control.scan_failed);

  CHECK_THROWS_AS(subspace_negativity(2, a, base, cut, 0),
                  std::invalid_argument);
}

TEST_CASE("nodal distance uses trapezoid masses") {
  Grid g = Grid::make(kUnit, 9);
  GridFunction u = interpolate([](const Vec2& x) { return x[0]; }, g, false);
  GridFunction z(g, Eigen::VectorXd::Zero(g.node_count()), false);
  CHECK(l2_distance(u, z) == doctest::Approx(1.0 / std::sqrt(3.0))
                                 .epsilon(1e-2));
  CHECK(l2_distance(u, u) == 0.0);
  CHECK(l2_distance(u, z) == l2_distance(z, u));

  GridFunction w(Grid::make(kUnit, 7),
                 Eigen::VectorXd::Zero(7), false);
  CHECK_THROWS_AS(l2_distance(u, w), std::invalid_argument);
}
