// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "pxlap/nonlocal.hpp"

using namespace pxlap;

namespace {

const BoxDomain kUnit = BoxDomain::interval(0.0, 1.0);
const BoxDomain kSquare = BoxDomain::rectangle(0.0, 1.0, 0.0, 1.0);

GridFunction sine_fn(const Grid& g, std::uint64_t seed, double amp = 1.0) {
  return interpolate(random_sine_field(g.domain, seed, 3, amp), g, true);
}

} // namespace

TEST_CASE("gagliardo modular overloads agree and match the closed form") {
  Grid g = Grid::make(kUnit, 33);
  GridFunction u = interpolate([](const Vec2& x) { return x[0]; }, g, false);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.25);
  PairQuadrature q = PairQuadrature::build(g, p, PairRegion::omega_omega);

  double direct = gagliardo_modular(u, q);
  double convenience = gagliardo_modular(u, p);
  CHECK(direct == convenience);
  // 2 / (kappa (kappa+1)) with kappa = 1.5
  CHECK(direct == doctest::Approx(8.0 / 15.0).epsilon(5e-4));
}

TEST_CASE("gagliardo seminorm is the p-th root for constant exponents") {
  Grid g = Grid::make(kUnit, 33);
  GridFunction u = interpolate([](const Vec2& x) { return x[0]; }, g, false);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.25);
  ModularReport rep = gagliardo_seminorm(u, p);
  CHECK(rep.luxemburg_norm ==
        doctest::Approx(std::sqrt(8.0 / 15.0)).epsilon(5e-4));
  CHECK(rep.residual <= 1e-8);
  CHECK(rep.bisection_iters > 0);
}

TEST_CASE("combined norms satisfy the recorded relations in 1D") {
  Grid g = Grid::make(kUnit, 33);
  ScalarExponent q = affine_exponent(kUnit, 2.0, Vec2(1.5, 0.0));
  PairExponent p = affine_trace_exponent(kUnit, 1.8, Vec2(0.4, 0.0), 0.4);
  for (double amp : {0.02, 1.0, 25.0}) {
    CAPTURE(amp);
    SeminormReport rep = combined_norms(sine_fn(g, 17, amp), q, p);
    CHECK(rep.all_ok);
    for (const CheckItem& item : rep.checks) {
      CAPTURE(item.name);
      CHECK(item.passed);
    }
    // the Luxemburg norm of the sum modular is equivalent to the norm sum
    CHECK(rep.norm_luxemburg >= 0.5 * rep.norm_sum * (1.0 - 1e-6));
    CHECK(rep.norm_luxemburg <= 2.0 * rep.norm_sum * (1.0 + 1e-6));
    CHECK(rep.norm_sum ==
          doctest::Approx(rep.seminorm +
                          (rep.norm_sum - rep.seminorm)).epsilon(1e-12));
    CHECK(rep.stats.pair_samples > 0);
    CHECK(rep.stats.diag_samples > 0);
    CHECK(rep.residual <= 1e-8);
  }
}

TEST_CASE("combined norms satisfy the recorded relations in 2D") {
  Grid g = Grid::make(kSquare, 9, 9);
  ScalarExponent q = constant_exponent(kSquare, 4.0);
  PairExponent p = constant_pair_exponent(kSquare, 2.0, 0.4);
  SeminormReport rep = combined_norms(sine_fn(g, 29), q, p);
  CHECK(rep.all_ok);
  CHECK(rep.seminorm > 0.0);
  CHECK(rep.norm_luxemburg > 0.0);
}

TEST_CASE("weak form diagonal equals the modular for constant exponents") {
  Grid g = Grid::make(kUnit, 17);
  GridFunction u = sine_fn(g, 5);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  double w = weak_form(u, u, p);
  CHECK(w == doctest::Approx(gagliardo_modular(u, p, PairRegion::full))
                 .epsilon(1e-12));

  // linear in the test function
  GridFunction v1 = sine_fn(g, 6);
  GridFunction v2 = sine_fn(g, 7);
  Eigen::VectorXd sum_vals = v1.values() + v2.values();
  GridFunction vsum(g, sum_vals, true);
  PairQuadrature quad = PairQuadrature::build(g, p, PairRegion::full);
  CHECK(weak_form(u, vsum, quad) ==
        doctest::Approx(weak_form(u, v1, quad) + weak_form(u, v2, quad))
            .epsilon(1e-10));

  // the omega-omega region and unpinned functions are rejected
  PairQuadrature inner = PairQuadrature::build(g, p, PairRegion::omega_omega);
  CHECK_THROWS_AS(weak_form(u, u, inner), std::invalid_argument);
  GridFunction raw =
      interpolate([](const Vec2& x) { return x[0]; }, g, false);
  CHECK_THROWS_AS(weak_form(raw, raw, quad), std::invalid_argument);
}

TEST_CASE("strong form diagnostic converges at a smooth maximum") {
  Grid g = Grid::make(kUnit, 65);
  GridFunction u = interpolate(
      [](const Vec2& x) { return x[0] * (1.0 - x[0]); }, g, true);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  std::vector<double> eps{0.2, 0.1, 0.05, 0.025, 0.0125};
  StrongFormReport rep = strong_form_diagnostic(u, p, Vec2(0.5, 0.0), eps);
  CHECK(rep.per_eps.size() == eps.size());
  CHECK(rep.converged);
  // at the global maximum every difference u(x) - u(y) is nonnegative
  CHECK(rep.value > 0.0);

  CHECK_THROWS_AS(
      strong_form_diagnostic(u, p, Vec2(2.0, 0.0), eps),
      std::invalid_argument);
  CHECK_THROWS_AS(
      strong_form_diagnostic(u, p, Vec2(0.5, 0.0), {0.1, 0.2}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      strong_form_diagnostic(u, p, Vec2(0.5, 0.0), eps, 0),
      std::invalid_argument);
}

TEST_CASE("imbedding ratio is stable under refinement") {
  ScalarExponent q = constant_exponent(kUnit, 2.2);
  ScalarExponent r = constant_exponent(kUnit, 1.35);
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  ImbeddingReport rep = imbedding_ratio(q, r, p, 3, 31, {9, 17, 33});
  CHECK(rep.max_ratio > 0.0);
  CHECK(rep.per_trial.size() == 3);
  CHECK(rep.level_max.size() == 3);
  CHECK(rep.refinement_stable);
  for (double ratio : rep.per_trial) CHECK(ratio <= rep.max_ratio + 1e-15);
}

TEST_CASE("imbedding ratio rejects precondition violations") {
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4); // critical = 10
  ScalarExponent q = constant_exponent(kUnit, 2.2);
  ScalarExponent r_super = constant_exponent(kUnit, 12.0);
  CHECK_THROWS_AS(imbedding_ratio(q, r_super, p, 2, 1, {9}),
                  std::invalid_argument);

  ScalarExponent q_low = constant_exponent(kUnit, 1.5); // below the trace
  ScalarExponent r = constant_exponent(kUnit, 1.35);
  CHECK_THROWS_AS(imbedding_ratio(q_low, r, p, 2, 1, {9}),
                  std::invalid_argument);

  CHECK_THROWS_AS(imbedding_ratio(q, r, p, 0, 1, {9}), std::invalid_argument);
  CHECK_THROWS_AS(imbedding_ratio(q, r, p, 2, 1, {}), std::invalid_argument);

  // s p >= N leaves no subcritical window at all
  PairExponent p_bad = constant_pair_exponent(kUnit, 2.5, 0.5);
  CHECK_THROWS_AS(imbedding_ratio(q, r, p_bad, 2, 1, {9}), std::domain_error);
}
