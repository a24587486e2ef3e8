// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/modular.hpp"

#include <cmath>
#include <stdexcept>

namespace pxlap {

namespace {

void check_domains(const GridFunction& u, const ScalarExponent& q,
                   const char* who) {
  const BoxDomain& a = u.grid().domain;
  const BoxDomain& b = q.domain();
  if (a.dim != b.dim || (a.lo - b.lo).norm() != 0.0 ||
      (a.hi - b.hi).norm() != 0.0)
    throw std::invalid_argument(std::string(who) +
                                ": exponent domain differs from the grid");
}

} // namespace

ModularSamples lebesgue_samples(const GridFunction& u, const ScalarExponent& q,
                                const LocalQuadrature& quad) {
  check_domains(u, q, "lebesgue modular");
  ModularSamples out;
  out.amp.reserve(quad.samples.size());
  for (const LocalSample& s : quad.samples)
    out.add(s.st.eval(u.values()), q(s.x), s.w);
  return out;
}

double lebesgue_modular(const GridFunction& u, const ScalarExponent& q,
                        const LocalQuadrature& quad) {
  return lebesgue_samples(u, q, quad).value_at_one();
}

double lebesgue_modular(const GridFunction& u, const ScalarExponent& q,
                        const ModularOptions& opts) {
  return lebesgue_modular(u, q, LocalQuadrature::build(u.grid(), opts.refine));
}

ModularReport luxemburg_norm(const GridFunction& u, const ScalarExponent& q,
                             const LocalQuadrature& quad, double bisect_tol) {
  ModularSamples s = lebesgue_samples(u, q, quad);
  LuxemburgResult r = luxemburg_root(s, bisect_tol);
  return {s.value_at_one(), r.norm, r.iters, r.residual};
}

ModularReport luxemburg_norm(const GridFunction& u, const ScalarExponent& q,
                             const ModularOptions& opts) {
  return luxemburg_norm(u, q, LocalQuadrature::build(u.grid(), opts.refine),
                        opts.bisect_tol);
}

RelationReport check_norm_modular_relations(const GridFunction& u,
                                            const ScalarExponent& q,
                                            const ModularOptions& opts) {
  ModularReport rep = luxemburg_norm(u, q, opts);
  RelationReport out;
  out.modular = rep.modular_value;
  out.norm = rep.luxemburg_norm;
  const double slack = opts.assert_tol;
  const double qm = q.lower(), qp = q.upper();
  const double rho = out.modular, nrm = out.norm;

  auto push = [&](const char* name, bool ok, double lhs, double rhs) {
    out.checks.push_back({name, ok, lhs, rhs});
  };

  // Unit-ball dichotomy: the modular and the norm sit on the same side of 1.
  if (nrm > 1.0 + slack)
    push("norm>1 implies modular>=1", rho >= 1.0 - slack, rho, 1.0);
  if (nrm < 1.0 - slack)
    push("norm<1 implies modular<=1", rho <= 1.0 + slack, rho, 1.0);
  if (rho > 1.0 + slack)
    push("modular>1 implies norm>=1", nrm >= 1.0 - slack, nrm, 1.0);
  if (rho < 1.0 - slack)
    push("modular<1 implies norm<=1", nrm <= 1.0 + slack, nrm, 1.0);

  // Power sandwiches on either side of the unit sphere.
  if (nrm > 1.0 + slack) {
    push("norm^q- <= modular (norm>1)",
         std::pow(nrm, qm) <= rho * (1.0 + slack), std::pow(nrm, qm), rho);
    push("modular <= norm^q+ (norm>1)",
         rho <= std::pow(nrm, qp) * (1.0 + slack), rho, std::pow(nrm, qp));
  }
  if (nrm < 1.0 - slack && nrm > 0.0) {
    push("norm^q+ <= modular (norm<1)",
         std::pow(nrm, qp) <= rho * (1.0 + slack), std::pow(nrm, qp), rho);
    push("modular <= norm^q- (norm<1)",
         rho <= std::pow(nrm, qm) * (1.0 + slack), rho, std::pow(nrm, qm));
  }
  if (nrm == 0.0)
    push("norm 0 iff modular 0", rho == 0.0, rho, 0.0);

  out.all_ok = all_passed(out.checks);
  return out;
}

PairingReport holder_pairing(const GridFunction& u, const GridFunction& v,
                             const ScalarExponent& q,
                             const ModularOptions& opts) {
  check_domains(u, q, "duality pairing");
  LocalQuadrature quad = LocalQuadrature::build(u.grid(), opts.refine);
  // Conjugate exponent q'(x) = q(x)/(q(x)-1); bounds swap roles. The
  // conjugate of the declared upper bound is the exact lower bound and vice
  // versa (t -> t/(t-1) is decreasing).
  ScalarExponent qc(
      [q](const Vec2& x) {
        double t = q(x);
        return t / (t - 1.0);
      },
      q.upper() / (q.upper() - 1.0), q.lower() / (q.lower() - 1.0), q.domain(),
      8);
  PairingReport out;
  out.pairing = std::abs(quad.pairing(u, v));
  out.norm_u = luxemburg_norm(u, q, quad, opts.bisect_tol).luxemburg_norm;
  out.norm_v_conj = luxemburg_norm(v, qc, quad, opts.bisect_tol).luxemburg_norm;
  out.bound = 2.0 * out.norm_u * out.norm_v_conj;
  out.passed = out.pairing <= out.bound * (1.0 + opts.assert_tol) ||
               (out.pairing == 0.0 && out.bound == 0.0);
  return out;
}

ComparisonReport exponent_comparison(const GridFunction& u,
                                     const ScalarExponent& alpha,
                                     const ScalarExponent& beta,
                                     double measure,
                                     const ModularOptions& opts) {
  check_domains(u, alpha, "exponent comparison");
  check_domains(u, beta, "exponent comparison");
  LocalQuadrature quad = LocalQuadrature::build(u.grid(), opts.refine);
  ComparisonReport out;
  out.precondition_ok = true;
  for (const LocalSample& s : quad.samples)
    if (alpha(s.x) > beta(s.x) + 1e-12) {
      out.precondition_ok = false;
      break;
    }
  if (!out.precondition_ok) return out;
  out.norm_alpha =
      luxemburg_norm(u, alpha, quad, opts.bisect_tol).luxemburg_norm;
  out.norm_beta = luxemburg_norm(u, beta, quad, opts.bisect_tol).luxemburg_norm;
  out.bound = 2.0 * (1.0 + measure) * out.norm_beta;
  out.passed = out.norm_alpha <= out.bound * (1.0 + opts.assert_tol);
  return out;
}

} // namespace pxlap
