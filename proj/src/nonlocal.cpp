// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/nonlocal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pxlap {

double gagliardo_modular(const GridFunction& u, const PairQuadrature& quad) {
  return quad.modular(u);
}

double gagliardo_modular(const GridFunction& u, const PairExponent& p,
                         PairRegion region, const PairQuadratureOptions& opts) {
  return PairQuadrature::build(u.grid(), p, region, opts).modular(u);
}

ModularReport gagliardo_seminorm(const GridFunction& u,
                                 const PairQuadrature& quad,
                                 double bisect_tol) {
  ModularSamples s = quad.samples(u);
  LuxemburgResult r = luxemburg_root(s, bisect_tol);
  return {s.value_at_one(), r.norm, r.iters, r.residual};
}

ModularReport gagliardo_seminorm(const GridFunction& u, const PairExponent& p,
                                 const PairQuadratureOptions& opts) {
  return gagliardo_seminorm(
      u, PairQuadrature::build(u.grid(), p, PairRegion::omega_omega, opts));
}

SeminormReport combined_norms(const GridFunction& u, const ScalarExponent& q,
                              const PairExponent& p,
                              const PairQuadratureOptions& opts,
                              int local_refine, double equivalence_slack) {
  const double tol = 1e-10;
  LocalQuadrature local = LocalQuadrature::build(u.grid(), local_refine);
  PairQuadrature pairq =
      PairQuadrature::build(u.grid(), p, PairRegion::omega_omega, opts);

  ModularSamples sq = lebesgue_samples(u, q, local);
  ModularSamples sg = pairq.samples(u);
  // The combined modular must be the literal concatenation of the two sample
  // sets: the recorded equivalence inequalities below are exact for any
  // shared positive quadrature but not across different quadratures.
  ModularSamples sc = sq;
  sc.append(sg);

  LuxemburgResult lq = luxemburg_root(sq, tol);
  LuxemburgResult lg = luxemburg_root(sg, tol);
  LuxemburgResult lc = luxemburg_root(sc, tol);

  SeminormReport out;
  out.gagliardo_modular = sg.value_at_one();
  out.seminorm = lg.norm;
  out.combined_modular = sc.value_at_one();
  out.norm_sum = lq.norm + lg.norm;
  out.norm_luxemburg = lc.norm;
  out.bisection_iters = lc.iters;
  out.residual = lc.residual;
  out.stats = pairq.stats();

  const double slack = equivalence_slack;
  auto push = [&](const char* name, bool ok, double lhs, double rhs) {
    out.checks.push_back({name, ok, lhs, rhs});
  };

  const double nrm = out.norm_luxemburg, rho = out.combined_modular;
  if (nrm > 0.0)
    push("combined modular at the norm is within tolerance of 1",
         std::abs(sc.value(nrm) - 1.0) <= 1e-6, sc.value(nrm), 1.0);
  else
    push("zero norm iff zero modular", rho == 0.0, rho, 0.0);

  if (nrm > 1.0 + slack) {
    push("modular >= 1 when norm > 1", rho >= 1.0 - slack, rho, 1.0);
    const double emin = std::min(q.lower(), p.p_minus());
    const double emax = std::max(q.upper(), p.p_plus());
    push("norm^e- <= modular (norm>1)",
         std::pow(nrm, emin) <= rho * (1.0 + slack), std::pow(nrm, emin), rho);
    push("modular <= norm^e+ (norm>1)",
         rho <= std::pow(nrm, emax) * (1.0 + slack), rho, std::pow(nrm, emax));
  } else if (nrm < 1.0 - slack && nrm > 0.0) {
    push("modular <= 1 when norm < 1", rho <= 1.0 + slack, rho, 1.0);
  }

  // Two-sided equivalence with the sum of the individual norms. The first
  // inequality is sharp because each sample satisfies rho(t v) <= t rho(v)
  // for t <= 1 (exponents are > 1); the second because each individual
  // modular is dominated termwise by the combined one.
  push("luxemburg norm <= sum of norms",
       out.norm_luxemburg <= out.norm_sum * (1.0 + slack), out.norm_luxemburg,
       out.norm_sum);
  push("sum of norms <= 2x luxemburg norm",
       out.norm_sum <= 2.0 * out.norm_luxemburg * (1.0 + slack), out.norm_sum,
       2.0 * out.norm_luxemburg);

  out.all_ok = all_passed(out.checks);
  return out;
}

double weak_form(const GridFunction& u, const GridFunction& v,
                 const PairQuadrature& quad) {
  if (quad.region() != PairRegion::full)
    throw std::invalid_argument(
        "weak form: quadrature must cover the full region");
  if (!u.pinned() || !v.pinned())
    throw std::invalid_argument(
        "weak form: both functions must vanish on the boundary (pinned)");
  return quad.weak(u, v);
}

double weak_form(const GridFunction& u, const GridFunction& v,
                 const PairExponent& p, const PairQuadratureOptions& opts) {
  return weak_form(
      u, v, PairQuadrature::build(u.grid(), p, PairRegion::full, opts));
}

StrongFormReport strong_form_diagnostic(
    const GridFunction& u, const PairExponent& p, const Vec2& x,
    const std::vector<double>& eps_sequence, int subdivisions) {
  const Grid& grid = u.grid();
  const BoxDomain& dom = grid.domain;
  if (!dom.contains(x))
    throw std::invalid_argument("strong form: evaluation point outside the "
                                "domain");
  if (subdivisions < 1)
    throw std::invalid_argument("strong form: need subdivisions >= 1");
  for (std::size_t i = 0; i + 1 < eps_sequence.size(); ++i)
    if (!(eps_sequence[i] > eps_sequence[i + 1]) || !(eps_sequence.back() > 0))
      throw std::invalid_argument(
          "strong form: epsilons must decrease and stay positive");

  const int dim = dom.dim;
  const double N = static_cast<double>(dim);
  const double s = p.s();
  const double W = dom.diameter();
  const double ux = eval(u, x);

  // Tail radius: distance to the boundary of the collar box, as in the pair
  // quadrature; beyond it u vanishes and the integral is exact.
  double rt = std::numeric_limits<double>::infinity();
  for (int a = 0; a < dim; ++a)
    rt = std::min({rt, x[a] - (dom.lo[a] - W), (dom.hi[a] + W) - x[a]});
  const double pbar = p.trace(x);
  const double omega_n = dim == 1 ? 2.0 : 2.0 * 3.14159265358979323846;
  const double tail = std::pow(std::abs(ux), pbar - 1.0) *
                      (ux > 0 ? 1.0 : (ux < 0 ? -1.0 : 0.0)) * omega_n *
                      std::pow(rt, -s * pbar) / (s * pbar);

  // Midpoint mesh of the collar box, refined from the grid cells inside
  // Omega and from diameter-wide collars of comparable width outside.
  std::vector<double> ys[2], ws[2];
  for (int a = 0; a < 2; ++a) {
    if (a < dim) {
      const double h = grid.spacing(a);
      const int mext = static_cast<int>(std::ceil(W / h));
      const double wext = W / mext;
      auto push_seg = [&](double lo, double width, int m) {
        for (int i = 0; i < m; ++i) {
          ys[a].push_back(lo + (i + 0.5) * width / m);
          ws[a].push_back(width / m);
        }
      };
      for (int i = 0; i < mext; ++i)
        push_seg(dom.lo[a] - W + i * wext, wext, subdivisions);
      for (int i = 0; i < grid.cells(a); ++i)
        push_seg(dom.lo[a] + i * h, h, subdivisions);
      for (int i = 0; i < mext; ++i)
        push_seg(dom.hi[a] + i * wext, wext, subdivisions);
    } else {
      ys[a].push_back(0.0);
      ws[a].push_back(1.0);
    }
  }

  StrongFormReport out;
  for (double eps : eps_sequence) {
    double acc = 0.0;
    for (std::size_t j = 0; j < ys[1].size(); ++j)
      for (std::size_t i = 0; i < ys[0].size(); ++i) {
        Vec2 y(ys[0][i], ys[1][j]);
        double r = (x - y).norm();
        if (r <= eps || r > rt) continue;
        double pxy = p(x, y);
        double du = ux - eval(u, y);
        acc += ws[0][i] * ws[1][j] *
               std::pow(std::abs(du), pxy - 1.0) *
               (du > 0 ? 1.0 : (du < 0 ? -1.0 : 0.0)) *
               std::pow(r, -(N + s * pxy));
      }
    out.per_eps.push_back(2.0 * (acc + tail));
  }

  for (std::size_t k = 0; k + 1 < out.per_eps.size(); ++k)
    out.diffs.push_back(out.per_eps[k + 1] - out.per_eps[k]);

  out.value = out.per_eps.empty() ? 0.0 : out.per_eps.back();
  const double scale = std::max(1.0, std::abs(out.value));
  if (out.diffs.size() >= 2) {
    double d0 = out.diffs[out.diffs.size() - 2];
    double d1 = out.diffs.back();
    if (std::abs(d1) <= 1e-12 * scale) {
      out.converged = true;
    } else if (std::abs(d1) <= 0.6 * std::abs(d0) &&
               std::abs(d1 - d0) > 1e-12 * scale) {
      // Aitken extrapolation of the last three truncations.
      std::size_t n = out.per_eps.size();
      out.value = out.per_eps[n - 1] - d1 * d1 / (d1 - d0);
      out.converged = true;
    }
  } else if (out.diffs.size() == 1) {
    out.converged = std::abs(out.diffs[0]) <= 1e-12 * scale;
  } else {
    out.converged = true; // single truncation: nothing to compare
  }
  return out;
}

ImbeddingReport imbedding_ratio(const ScalarExponent& q,
                                const ScalarExponent& r, const PairExponent& p,
                                int trials, std::uint64_t seed,
                                const std::vector<int>& level_nodes,
                                const PairQuadratureOptions& opts) {
  if (trials < 1 || level_nodes.empty())
    throw std::invalid_argument("imbedding ratio: need trials and levels");
  const BoxDomain& dom = p.domain();
  // Sampled preconditions: target exponent strictly below critical, and the
  // Lebesgue exponent at least the trace.
  {
    const int m = 33;
    for (int j = 0; j < (dom.dim == 2 ? m : 1); ++j)
      for (int i = 0; i < m; ++i) {
        Vec2 x(dom.lo[0] + dom.length(0) * i / (m - 1.0),
               dom.dim == 2 ? dom.lo[1] + dom.length(1) * j / (m - 1.0) : 0.0);
        double crit = critical_exponent(p, x); // throws when s p(x,x) >= N
        if (!(r(x) < crit))
          throw std::invalid_argument(
              "imbedding ratio: target exponent reaches the critical "
              "exponent at a sampled point");
        if (!(q(x) >= p.trace(x) - 1e-12))
          throw std::invalid_argument(
              "imbedding ratio: Lebesgue exponent falls below the trace "
              "exponent at a sampled point");
      }
  }

  ImbeddingReport out;
  for (std::size_t lev = 0; lev < level_nodes.size(); ++lev) {
    int n = level_nodes[lev];
    Grid grid = Grid::make(dom, n, dom.dim == 2 ? n : 0);
    LocalQuadrature local = LocalQuadrature::build(grid, 2);
    PairQuadrature pairq =
        PairQuadrature::build(grid, p, PairRegion::omega_omega, opts);
    double level_best = 0.0;
    for (int t = 0; t < trials; ++t) {
      Field f = random_sine_field(dom, seed + 977u * t, 4, 1.0);
      GridFunction u = interpolate(f, grid, true);
      ModularSamples sc = lebesgue_samples(u, q, local);
      sc.append(pairq.samples(u));
      double x_norm = luxemburg_root(sc).norm;
      double r_norm = luxemburg_norm(u, r, local).luxemburg_norm;
      if (x_norm <= 0.0) continue;
      double ratio = r_norm / x_norm;
      level_best = std::max(level_best, ratio);
      if (lev + 1 == level_nodes.size()) out.per_trial.push_back(ratio);
    }
    out.level_max.push_back(level_best);
    out.max_ratio = std::max(out.max_ratio, level_best);
  }
  out.refinement_stable = true;
  for (std::size_t k = 0; k + 1 < out.level_max.size(); ++k)
    if (out.level_max[k + 1] > 1.10 * out.level_max[k] + 1e-12)
      out.refinement_stable = false;
  return out;
}

} // namespace pxlap
