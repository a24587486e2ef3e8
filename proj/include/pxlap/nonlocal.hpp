// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_NONLOCAL_HPP
#define PXLAP_NONLOCAL_HPP

#include <cstdint>
#include <vector>

#include "pxlap/checks.hpp"
#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/modular.hpp"
#include "pxlap/quadrature.hpp"

namespace pxlap {

struct SeminormReport {
  double gagliardo_modular = 0.0;
  double seminorm = 0.0;        // Luxemburg root of the Gagliardo modular
  double combined_modular = 0.0;
  double norm_sum = 0.0;        // ||u||_{L^{q(.)}} + seminorm
  double norm_luxemburg = 0.0;  // Luxemburg root of the combined modular
  int bisection_iters = 0;
  double residual = 0.0;
  std::vector<CheckItem> checks;
  bool all_ok = false;
  PairQuadratureStats stats;
};

double gagliardo_modular(const GridFunction& u, const PairQuadrature& quad);
double gagliardo_modular(const GridFunction& u, const PairExponent& p,
                         PairRegion region = PairRegion::omega_omega,
                         const PairQuadratureOptions& opts = {});

ModularReport gagliardo_seminorm(const GridFunction& u,
                                 const PairQuadrature& quad,
                                 double bisect_tol = 1e-10);
ModularReport gagliardo_seminorm(const GridFunction& u, const PairExponent& p,
                                 const PairQuadratureOptions& opts = {});

/// Lebesgue norm, seminorm, and the combined-modular Luxemburg norm from one
/// shared sample decomposition, with the recorded checks: unit-modular
/// characterization, modular/norm ordering with the extreme exponents, the
/// sign relation, and the two-sided equivalence
/// 0.5 * norm_sum <= norm_luxemburg <= 2 * norm_sum.
SeminormReport combined_norms(const GridFunction& u, const ScalarExponent& q,
                              const PairExponent& p,
                              const PairQuadratureOptions& opts = {},
                              int local_refine = 2,
                              double equivalence_slack = 1e-6);

/// Double integral of |u(x)-u(y)|^{p-2}(u(x)-u(y))(v(x)-v(y)) against the
/// kernel over the full region; u and v must be pinned (zero extension).
double weak_form(const GridFunction& u, const GridFunction& v,
                 const PairQuadrature& quad);
double weak_form(const GridFunction& u, const GridFunction& v,
                 const PairExponent& p,
                 const PairQuadratureOptions& opts = {});

struct StrongFormReport {
  double value = 0.0;            // extrapolated principal value
  std::vector<double> per_eps;   // one truncated integral per epsilon
  std::vector<double> diffs;     // successive differences
  bool converged = false;        // false when the diffs stop shrinking
};

/// Pointwise principal-value evaluation of the operator at an interior node:
/// truncated integrals over {|x-y| > eps} for a decreasing eps sequence,
/// accelerated by Aitken extrapolation when the differences shrink.
/// Diagnostic only; the solver never uses it.
StrongFormReport strong_form_diagnostic(const GridFunction& u,
                                        const PairExponent& p, const Vec2& x,
                                        const std::vector<double>& eps_sequence,
                                        int subdivisions = 8);

struct ImbeddingReport {
  double max_ratio = 0.0;
  std::vector<double> per_trial;  // ratios at the finest level
  std::vector<double> level_max;  // max ratio per refinement level
  bool refinement_stable = false; // growth < 10% per level
};

/// Empirical lower bound on the imbedding constant of the combined norm into
/// L^{r(.)}: max over random pinned functions of ||u||_{L^r} / combined norm,
/// repeated across refinement levels. Preconditions r(x) < critical exponent
/// and q(x) >= p(x,x) are sampled and violations abort.
ImbeddingReport imbedding_ratio(const ScalarExponent& q,
                                const ScalarExponent& r, const PairExponent& p,
                                int trials, std::uint64_t seed,
                                const std::vector<int>& level_nodes,
                                const PairQuadratureOptions& opts = {});

} // namespace pxlap

#endif
