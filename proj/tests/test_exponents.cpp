// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "pxlap/exponents.hpp"

using namespace pxlap;

namespace {
const BoxDomain kUnit = BoxDomain::interval(0.0, 1.0);
const BoxDomain kSquare = BoxDomain::rectangle(0.0, 1.0, 0.0, 1.0);
} // namespace

TEST_CASE("scalar exponent bounds are validated at construction") {
  ScalarExponent q = constant_exponent(kUnit, 4.0);
  CHECK(q(Vec2(0.3, 0.0)) == 4.0);
  CHECK(q.lower() == 4.0);
  CHECK(q.upper() == 4.0);

  // declared bounds must hold on the sample set
  CHECK_THROWS_AS(ScalarExponent([](const Vec2& x) { return 2.0 + x[0]; },
                                 1.5, 2.5, kUnit),
                  std::invalid_argument);
  // lower must exceed 1
  CHECK_THROWS_AS(ScalarExponent([](const Vec2&) { return 1.0; }, 1.0, 1.0,
                                 kUnit),
                  std::invalid_argument);
  CHECK_THROWS_AS(ScalarExponent([](const Vec2&) { return 2.0; }, 2.0, 2.0,
                                 kUnit, 1),
                  std::invalid_argument);
}

TEST_CASE("affine exponent takes its bounds at box corners") {
  ScalarExponent p = affine_exponent(kSquare, 2.0, Vec2(0.3, -0.1));
  CHECK(p(Vec2(0.5, 0.5)) == doctest::Approx(2.0 + 0.15 - 0.05));
  CHECK(p.lower() == doctest::Approx(1.9)); // corner (0,1)
  CHECK(p.upper() == doctest::Approx(2.3)); // corner (1,0)

  // in 1D the second slope component is ignored
  ScalarExponent p1 = affine_exponent(kUnit, 2.0, Vec2(0.5, 100.0));
  CHECK(p1(Vec2(0.5, 0.7)) == doctest::Approx(2.25));
  CHECK(p1.upper() == doctest::Approx(2.5));
}

TEST_CASE("table exponent interpolates and clamps") {
  std::vector<double> breaks{0.0, 0.4, 1.0};
  std::vector<double> values{1.5, 2.5, 2.0};
  ScalarExponent p = table_exponent(kUnit, breaks, values);
  CHECK(p(Vec2(0.0, 0.0)) == doctest::Approx(1.5));
  CHECK(p(Vec2(0.2, 0.0)) == doctest::Approx(2.0));
  CHECK(p(Vec2(0.7, 0.0)) == doctest::Approx(2.25));
  CHECK(p(Vec2(-1.0, 0.0)) == doctest::Approx(1.5)); // clamped left
  CHECK(p(Vec2(2.0, 0.0)) == doctest::Approx(2.0));  // clamped right
  CHECK(p.lower() == 1.5);
  CHECK(p.upper() == 2.5);

  CHECK_THROWS_AS(table_exponent(kUnit, {0.0, 0.0, 1.0}, {2.0, 2.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(table_exponent(kUnit, {0.0, 1.0}, {2.0, 2.0, 2.0}),
                  std::invalid_argument);
}

TEST_CASE("pair exponent validates symmetry, bounds and order") {
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  CHECK(p(Vec2(0.1, 0.0), Vec2(0.9, 0.0)) == 2.0);
  CHECK(p.trace(Vec2(0.5, 0.0)) == 2.0);
  CHECK(p.s() == 0.4);
  CHECK(p.subcritical()); // 0.4 * 2 < 1

  // an asymmetric evaluator is rejected
  CHECK_THROWS_AS(
      PairExponent([](const Vec2& x, const Vec2& y) {
        return 2.0 + x[0] - 0.5 * y[0];
      }, 1.5, 3.5, 0.4, kUnit),
      std::invalid_argument);
  // fractional order must lie strictly inside (0,1)
  CHECK_THROWS_AS(constant_pair_exponent(kUnit, 2.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(constant_pair_exponent(kUnit, 2.0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("affine and table pair exponents act through midpoints") {
  PairExponent p = affine_trace_exponent(kSquare, 2.0, Vec2(0.4, 0.2), 0.3);
  Vec2 x(0.2, 0.8), y(0.6, 0.0);
  CHECK(p(x, y) == doctest::Approx(2.0 + 0.4 * 0.4 + 0.2 * 0.4));
  CHECK(p(x, y) == doctest::Approx(p(y, x)));
  CHECK(p.p_minus() == doctest::Approx(2.0));
  CHECK(p.p_plus() == doctest::Approx(2.6));

  PairExponent t = table_pair_exponent(kUnit, {0.0, 1.0}, {1.5, 2.5}, 0.4);
  CHECK(t(Vec2(0.2, 0.0), Vec2(0.6, 0.0)) == doctest::Approx(1.9));
  CHECK(t.p_minus() == 1.5);
  CHECK(t.p_plus() == 2.5);
}

TEST_CASE("trace and max exponents compose") {
  PairExponent p = affine_trace_exponent(kUnit, 2.0, Vec2(0.5, 0.0), 0.4);
  ScalarExponent tr = trace_exponent(p);
  CHECK(tr(Vec2(0.4, 0.0)) == doctest::Approx(2.2));
  CHECK(tr.lower() == doctest::Approx(2.0));
  CHECK(tr.upper() == doctest::Approx(2.5));

  ScalarExponent a = constant_exponent(kUnit, 2.2);
  ScalarExponent m = max_exponent(tr, a);
  CHECK(m(Vec2(0.0, 0.0)) == doctest::Approx(2.2)); // constant wins
  CHECK(m(Vec2(1.0, 0.0)) == doctest::Approx(2.5)); // trace wins
  CHECK(m.lower() == doctest::Approx(2.2));
  CHECK(m.upper() == doctest::Approx(2.5));

  ScalarExponent other = constant_exponent(BoxDomain::interval(0.0, 2.0), 2.2);
  CHECK_THROWS_AS(max_exponent(tr, other), std::invalid_argument);
}

TEST_CASE("critical exponent formula and failure mode") {
  // N p / (N - s p): 1D, p = 2, s = 0.4 -> 2 / 0.2 = 10
  PairExponent p1 = constant_pair_exponent(kUnit, 2.0, 0.4);
  CHECK(critical_exponent(p1, Vec2(0.5, 0.0)) == doctest::Approx(10.0));

  // 2D, p = 3, s = 0.5 -> 6 / 0.5 = 12
  PairExponent p2 = constant_pair_exponent(kSquare, 3.0, 0.5);
  CHECK(critical_exponent(p2, Vec2(0.5, 0.5)) == doctest::Approx(12.0));

  // s p >= N has no critical exponent
  PairExponent bad = constant_pair_exponent(kUnit, 2.0, 0.5);
  CHECK_THROWS_AS(critical_exponent(bad, Vec2(0.5, 0.0)), std::domain_error);
}

TEST_CASE("log-Hoelder modulus vanishes for constant exponents") {
  PairExponent p = constant_pair_exponent(kUnit, 2.0, 0.4);
  LogHolderReport rep = check_log_holder(p, {0.05, 0.1, 0.2}, 64);
  CHECK(rep.sup_value == 0.0);
  CHECK(rep.per_epsilon.size() == 3);
  for (const auto& [eps, sup] : rep.per_epsilon) {
    CHECK(eps > 0.0);
    CHECK(sup == 0.0);
  }
  CHECK(rep.pairs_used > 0);

  CHECK_THROWS_AS(check_log_holder(p, {0.1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(check_log_holder(p, {-0.1}, 16), std::invalid_argument);
}

TEST_CASE("built-in plateau exponent is log-Hoelder with margin") {
  PairExponent p = example_exponent(kUnit, 2.0, 3.0, 0.4);
  // p(x,y) = p0 + |x-y| inside the box, so the modulus is at most
  // d log(1/d) <= 1/e on admissible pairs (d < 1/2).
  const double inv_e = 0.36787944117144233;
  LogHolderReport rep = check_log_holder(p, {0.05, 0.1, 0.2}, 128);
  for (const auto& [eps, sup] : rep.per_epsilon) {
    CHECK(sup <= inv_e + 1e-12);
    CHECK(sup <= 0.37);
  }
  CHECK(rep.sup_value <= inv_e + 1e-12);
  CHECK(rep.sup_value > 0.0); // the field genuinely varies
}

TEST_CASE("plateau exponent geometry") {
  PairExponent p = example_exponent(kUnit, 2.0, 3.0, 0.4);
  CHECK(p.trace(Vec2(0.3, 0.0)) == doctest::Approx(2.0));
  // inside the hull the bump equals one: p = p0 + |x-y| exactly
  CHECK(p(Vec2(0.1, 0.0), Vec2(0.9, 0.0)) == doctest::Approx(2.8));
  // far outside the support the field returns to p0
  CHECK(p(Vec2(9.0, 0.0), Vec2(9.5, 0.0)) == doctest::Approx(2.0));
  CHECK(p.p_minus() == doctest::Approx(2.0));
  CHECK(p.p_plus() == doctest::Approx(2.0 + std::sqrt(2.0) * 3.0));

  CHECK_THROWS_AS(example_exponent(kUnit, 1.0, 3.0, 0.4),
                  std::invalid_argument);
  CHECK_THROWS_AS(example_exponent(kUnit, 2.0, -1.0, 0.4),
                  std::invalid_argument);
  // pair hull of the unit interval has norm sqrt(2) > 1, so R = 1 is too small
  CHECK_THROWS_AS(example_exponent(kUnit, 2.0, 1.0, 0.4),
                  std::invalid_argument);
}
