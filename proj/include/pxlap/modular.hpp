// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_MODULAR_HPP
#define PXLAP_MODULAR_HPP

#include "pxlap/checks.hpp"
#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/quadrature.hpp"

namespace pxlap {

struct ModularReport {
  double modular_value = 0.0;
  double luxemburg_norm = 0.0;
  int bisection_iters = 0;
  double residual = 0.0;
};

struct ModularOptions {
  int refine = 2;           // sub-samples per cell per axis
  double bisect_tol = 1e-10;
  double assert_tol = 1e-8; // relative slack of recorded inequalities
};

/// (amp, expn, coef) triples of integral |u|^{q(x)} over the quadrature.
ModularSamples lebesgue_samples(const GridFunction& u, const ScalarExponent& q,
                                const LocalQuadrature& quad);

double lebesgue_modular(const GridFunction& u, const ScalarExponent& q,
                        const LocalQuadrature& quad);
double lebesgue_modular(const GridFunction& u, const ScalarExponent& q,
                        const ModularOptions& opts = {});

ModularReport luxemburg_norm(const GridFunction& u, const ScalarExponent& q,
                             const LocalQuadrature& quad,
                             double bisect_tol = 1e-10);
ModularReport luxemburg_norm(const GridFunction& u, const ScalarExponent& q,
                             const ModularOptions& opts = {});

struct RelationReport {
  double modular = 0.0;
  double norm = 0.0;
  std::vector<CheckItem> checks;
  bool all_ok = false;
};

/// Norm-modular relations: sign(modular - 1) = sign(norm - 1);
/// norm^{q-} <= modular <= norm^{q+} when norm > 1, reversed when norm < 1.
RelationReport check_norm_modular_relations(const GridFunction& u,
                                            const ScalarExponent& q,
                                            const ModularOptions& opts = {});

struct PairingReport {
  double pairing = 0.0;     // |integral u v|
  double norm_u = 0.0;      // Luxemburg norm of u in exponent q
  double norm_v_conj = 0.0; // Luxemburg norm of v in the conjugate exponent
  double bound = 0.0;       // 2 * norm_u * norm_v_conj
  bool passed = false;
};

/// Duality pairing bound |integral u v| <= 2 ||u||_q ||v||_{q'} with
/// q'(x) = q(x)/(q(x)-1); all three integrals share one quadrature.
PairingReport holder_pairing(const GridFunction& u, const GridFunction& v,
                             const ScalarExponent& q,
                             const ModularOptions& opts = {});

struct ComparisonReport {
  bool precondition_ok = false; // alpha <= beta at sampled points
  double norm_alpha = 0.0;
  double norm_beta = 0.0;
  double bound = 0.0; // 2(1 + measure) * norm_beta
  bool passed = false;
};

/// Exponent comparison ||u||_alpha <= 2(1 + |Omega|) ||u||_beta for
/// alpha(x) <= beta(x); when the precondition fails at a sampled point the
/// check is skipped and reported as such.
ComparisonReport exponent_comparison(const GridFunction& u,
                                     const ScalarExponent& alpha,
                                     const ScalarExponent& beta,
                                     double measure,
                                     const ModularOptions& opts = {});

} // namespace pxlap

#endif
