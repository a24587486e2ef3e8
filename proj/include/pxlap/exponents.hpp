// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_EXPONENTS_HPP
#define PXLAP_EXPONENTS_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "pxlap/grid.hpp"

namespace pxlap {

using PairField = std::function<double(const Vec2&, const Vec2&)>;

/// Variable exponent q(x) on a closed box, with declared bounds
/// 1 < lower <= q(x) <= upper validated by sampling at construction.
class ScalarExponent {
 public:
  /// Samples `validation_points` points per axis on the closed box (endpoints
  /// included) and aborts with std::invalid_argument when any sample violates
  /// the declared bounds or the bounds themselves are inadmissible.
  ScalarExponent(Field evaluator, double lower, double upper,
                 const BoxDomain& domain, int validation_points = 64);

  double operator()(const Vec2& x) const { return eval_(x); }
  double lower() const { return lower_; }
  double upper() const { return upper_; }
  const BoxDomain& domain() const { return domain_; }

 private:
  Field eval_;
  double lower_, upper_;
  BoxDomain domain_;
};

/// Symmetric pair exponent p(x,y) with fractional order s in (0,1) and
/// declared bounds 1 < p_minus <= p(x,y) <= p_plus. Symmetry and bounds are
/// validated on a deterministic pair sample at construction; subcriticality
/// s*p_plus < dim is recorded but not enforced here (only the imbedding
/// machinery needs it, and the Gagliardo integrals are finite without it).
class PairExponent {
 public:
  PairExponent(PairField evaluator, double p_minus, double p_plus, double s,
               const BoxDomain& domain, int validation_points = 64);

  double operator()(const Vec2& x, const Vec2& y) const { return eval_(x, y); }
  double trace(const Vec2& x) const { return eval_(x, x); }
  double p_minus() const { return p_minus_; }
  double p_plus() const { return p_plus_; }
  double s() const { return s_; }
  const BoxDomain& domain() const { return domain_; }
  bool subcritical() const { return s_ * p_plus_ < domain_.dim; }

 private:
  PairField eval_;
  double p_minus_, p_plus_, s_;
  BoxDomain domain_;
};

/// N p(x,x) / (N - s p(x,x)); throws std::domain_error when s p(x,x) >= N.
double critical_exponent(const PairExponent& p, const Vec2& x);

struct LogHolderReport {
  double sup_value = 0.0; // min over epsilons of the per-epsilon sups
  std::vector<std::pair<double, double>> per_epsilon; // (epsilon, sup)
  int pairs_used = 0;
};

/// Finite-sample surrogate of the log-Hoelder-type modulus: for each epsilon,
/// the sup over sampled pairs (x,y), 0 < |x-y| < 1/2, of
///   (p(x,y) - inf_{B_eps(x,y)} p) * log(1/|x-y|),
/// with the infimum taken over 32 quasi-random points of the ball around
/// (x,y) in pair space (the center included, so each term is >= 0).
LogHolderReport check_log_holder(const PairExponent& p,
                                 const std::vector<double>& epsilons,
                                 int samples,
                                 std::uint64_t halton_offset = 1);

/// Built-in exponent fields. Declared bounds are exact for each family.
ScalarExponent constant_exponent(const BoxDomain& domain, double q);
ScalarExponent affine_exponent(const BoxDomain& domain, double base,
                               const Vec2& slope);
/// Piecewise-linear table in the first coordinate; clamped outside the
/// breakpoint range. Breakpoints must be strictly increasing.
ScalarExponent table_exponent(const BoxDomain& domain,
                              std::vector<double> breaks,
                              std::vector<double> values);
ScalarExponent trace_exponent(const PairExponent& p);
/// Pointwise max of two scalar exponents on a shared domain.
ScalarExponent max_exponent(const ScalarExponent& a, const ScalarExponent& b);

PairExponent constant_pair_exponent(const BoxDomain& domain, double p,
                                    double s);
/// p(x,y) = affine evaluated at the midpoint (x+y)/2; symmetric by
/// construction with exact corner bounds.
PairExponent affine_trace_exponent(const BoxDomain& domain, double base,
                                   const Vec2& slope, double s);
PairExponent table_pair_exponent(const BoxDomain& domain,
                                 std::vector<double> breaks,
                                 std::vector<double> values, double s);

/// p(x,y) = p0 + |x-y| * xi(x,y) where xi is a smooth plateau bump equal to 1
/// on the closed box-hull of domain x domain and decaying like
/// exp(1 - 1/(1 - tau^2)) with tau the scaled distance to the hull; the decay
/// width is R minus the hull's max norm, so supp(xi) stays inside the radius-R
/// ball of pair space. Rejects p0 <= 1 and hulls not contained in that ball.
PairExponent example_exponent(const BoxDomain& domain, double p0, double R,
                              double s);

} // namespace pxlap

#endif
