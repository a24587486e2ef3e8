// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_DEGIORGI_HPP
#define PXLAP_DEGIORGI_HPP

#include <vector>

#include "pxlap/checks.hpp"
#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/quadrature.hpp"

namespace pxlap {

/// Constants of the superlinear recursion Z_{n+1} <= K b^n (Z_n^{1+d1} +
/// Z_n^{1+d2}); construction validates K > 0, b >= 1, d2 >= d1 > 0.
struct RecursionParams {
  double K = 1.0;
  double b = 2.0;
  double d1 = 1.0;
  double d2 = 1.0;
};

void validate(const RecursionParams& p); // throws std::invalid_argument

struct Thresholds {
  double thr_a = 0.0; // min(1, (2K)^{-1/d1} b^{-1/d1^2})
  double thr_b = 0.0; // min((2K)^{-1/d1} b^{-1/d1^2},
                      ///     (2K)^{-1/d2} b^{-1/(d1 d2) - (d2-d1)/d2^2})
};

Thresholds recursion_threshold(const RecursionParams& p);

struct RecursionTrace {
  std::vector<double> Z;
  bool hypothesis_met = false; // Z0 below either threshold
  bool diverged = false;       // overflow of the worst-case iterate
  bool converged = false;      // Z collapsed toward 0
  int n0 = -1;                 // first index with Z_n <= 1
  bool tail_ok = false;        // Z_n <= min(1, (2K)^{-1/d1} b^{-1/d1^2 - n/d1})
                               /// for all n >= n0
};

/// Iterates the recursion as equality (the worst admissible case) and checks
/// the closed-form tail bound whenever the smallness hypothesis holds.
RecursionTrace simulate_recursion(const RecursionParams& p, double Z0,
                                  int n_max);

/// Rising levels k_n = k_star (2 - 2^{-n}), n = 0..n_max.
std::vector<double> levels(double k_star, int n_max);

struct LevelFunctional {
  double Z = 0.0;       // integral of (u-k)^{q(x)} over the superlevel set
  double measure = 0.0; // quadrature measure of {u > k}
};

/// Superlevel-set integrals with the indicator applied at quadrature points.
LevelFunctional level_functional(const GridFunction& u,
                                 const ScalarExponent& q, double k,
                                 const LocalQuadrature& quad);

struct KstarConstants {
  double C16 = 1.0;
  double g1 = 1.0, g2 = 1.0; // g2 >= g1 > 0
  double d1 = 1.0, d2 = 1.0; // d2 >= d1 > 0
  double b = 2.0;            // b >= 1
};

/// The explicit starting level
///   k_star = max((4 C16)^{1/g1}, (4 C16)^{1/g2})
///          * b^{(1/g1)(1/d1 + (d2-d1)/d2)}
///          * max(M^{d1/g2}, M^{d2/g1}),   M = modular_q,
/// which places Z_0 below the recursion threshold; the two inequalities that
/// encode that are re-checked numerically. Rejects modular_q <= 0.
double kstar_select(const KstarConstants& c, double modular_q);

struct LevelRecord {
  int n = 0;
  double k = 0.0;
  double measure = 0.0;
  double Z = 0.0;
};

struct DeGiorgiTrace {
  double k_star = 0.0;
  std::vector<LevelRecord> records;
  double fitted_K = 0.0; // least-squares fit of Z_{n+1}/(Z_n^{1+d1}+Z_n^{1+d2})
  double fitted_b = 1.0;
  bool vanished = false;
  int vanish_level = -1;
  std::vector<CheckItem> level_checks; // per-level truncation estimates
  bool all_ok = false;
};

/// Full level trace of u: (k_n, |A_{k_n}|, Z_n), the empirical recursion-
/// constant fit for the supplied (d1, d2), the zero-tail assertion once
/// k_n >= sup u, and the per-level truncation estimates
///   integral_{A_{k_{n+1}}} u^q <= 2^{(n+2) q+} Z_n,
///   |A_{k_{n+1}}| <= 2 (1 + k_star^{-q+}) 2^{(n+1) q+} Z_n.
DeGiorgiTrace degiorgi_on_solution(const GridFunction& u,
                                   const ScalarExponent& q, double k_star,
                                   int n_max, double d1, double d2,
                                   int local_refine = 2);

struct LinfFitPoint {
  double norm = 0.0; // Luxemburg norm in the comparison exponent
  double sup = 0.0;  // nodal sup norm
};

struct LinfFitReport {
  double C = 0.0;
  double tau1 = 1.0; // slope fitted on the sub-unit-norm subset
  double tau2 = 1.0; // slope fitted on the rest
  int violations = 0;
  std::vector<LinfFitPoint> points;
};

/// Fits sup <= C max(norm^{tau1}, norm^{tau2}) over a family of functions:
/// log-log least squares per subset (norm <= 1 and norm > 1), then the
/// smallest admissible C. Slopes outside (0, 10] are counted as violations;
/// identically zero members are skipped.
LinfFitReport verify_linf_bound(const std::vector<GridFunction>& solutions,
                                const ScalarExponent& q_tilde,
                                int local_refine = 2);

} // namespace pxlap

#endif
