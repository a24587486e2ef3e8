// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "pxlap/rng.hpp"

namespace pxlap {

namespace {

double sgn(double t) { return (t > 0.0) ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

double pow_abs(double t, double e) { return std::pow(std::abs(t), e); }

} // namespace

Nonlinearity zero_nonlinearity(const BoxDomain& domain) {
  return {[](const Vec2&, double) { return 0.0; },
          [](const Vec2&, double) { return 0.0; },
          0.0,
          constant_exponent(domain, 2.0),
          1e30,
          "zero"};
}

Nonlinearity prototype_nonlinearity(double lambda, const ScalarExponent& r,
                                    const ScalarExponent& q_growth) {
  if (!(lambda > 0.0))
    throw std::invalid_argument("prototype reaction: need lambda > 0");
  const BoxDomain& da = r.domain();
  const BoxDomain& db = q_growth.domain();
  if (da.dim != db.dim || (da.lo - db.lo).norm() != 0.0 ||
      (da.hi - db.hi).norm() != 0.0)
    throw std::invalid_argument("prototype reaction: domains differ");
  if (!(r.upper() < q_growth.lower()))
    throw std::invalid_argument(
        "prototype reaction: need r(x) < q(x) everywhere (well ordering)");
  ScalarExponent rc = r, qc = q_growth;
  auto f = [lambda, rc, qc](const Vec2& x, double t) {
    return lambda * pow_abs(t, rc(x) - 1.0) * sgn(t) -
           pow_abs(t, qc(x) - 1.0) * sgn(t);
  };
  auto F = [lambda, rc, qc](const Vec2& x, double t) {
    double re = rc(x), qe = qc(x);
    return lambda * pow_abs(t, re) / re - pow_abs(t, qe) / qe;
  };
  return {f, F, lambda + 1.0, q_growth, 1e30, "prototype"};
}

std::vector<CheckItem> check_nonlinearity(const Nonlinearity& nl,
                                          double t_range, int x_samples,
                                          int t_samples, std::uint64_t seed) {
  if (!(t_range > 0.0) || x_samples < 1 || t_samples < 2)
    throw std::invalid_argument("reaction check: inadmissible sampling");
  const BoxDomain& dom = nl.growth_q.domain();
  Rng rng(seed);
  std::vector<Vec2> xs;
  for (int i = 0; i < x_samples; ++i) {
    Vec2 x(rng.uniform(dom.lo[0], dom.hi[0]),
           dom.dim == 2 ? rng.uniform(dom.lo[1], dom.hi[1]) : 0.0);
    xs.push_back(x);
  }

  double worst_growth = 0.0;         // |f| minus the envelope (scaled)
  double worst_deriv = 0.0;          // |dF/dt - f| relative
  double worst_odd = 0.0;            // |f(x,-t) + f(x,t)| (scaled)
  bool any_growth = false, any_deriv = false, any_odd = false;
  for (const Vec2& x : xs) {
    for (int k = 0; k < t_samples; ++k) {
      double t = rng.symmetric() * t_range;
      double fv = nl.f(x, t);
      double env = nl.growth_C * (1.0 + pow_abs(t, nl.growth_q(x) - 1.0));
      any_growth = true;
      worst_growth =
          std::max(worst_growth, (std::abs(fv) - env) / std::max(1.0, env));
      // Central difference of the primitive; skipped near 0 where the
      // derivative of a sub-quadratic power law is unbounded.
      if (std::abs(t) > 0.02 * t_range) {
        double h = 1e-5 * (1.0 + std::abs(t));
        double diff = (nl.F(x, t + h) - nl.F(x, t - h)) / (2.0 * h);
        any_deriv = true;
        worst_deriv = std::max(worst_deriv, std::abs(diff - fv) /
                                                (1.0 + std::abs(fv)));
      }
      if (std::abs(t) < nl.t0) {
        any_odd = true;
        worst_odd = std::max(worst_odd, std::abs(nl.f(x, -t) + fv) /
                                            (1.0 + std::abs(fv)));
      }
    }
  }

  std::vector<CheckItem> out;
  out.push_back({"growth envelope |f| <= C(1+|t|^{q-1})",
                 !any_growth || worst_growth <= 1e-9, worst_growth, 1e-9});
  out.push_back({"primitive matches f by central differences",
                 !any_deriv || worst_deriv <= 1e-5, worst_deriv, 1e-5});
  out.push_back({"odd in t inside the declared radius",
                 !any_odd || worst_odd <= 1e-12, worst_odd, 1e-12});
  return out;
}

CutoffProfile cutoff_default(double t2) {
  if (!(t2 > 0.0))
    throw std::invalid_argument("cutoff profile: need t2 > 0");
  CutoffProfile cut;
  cut.t2 = t2;
  cut.rho = [t2](double t) {
    double a = std::abs(t);
    if (a <= t2) return 1.0;
    if (a >= 2.0 * t2) return 0.0;
    double tau = (a - t2) / t2;
    double smooth = tau * tau * tau * (10.0 + tau * (-15.0 + 6.0 * tau));
    return 1.0 - smooth;
  };
  cut.drho = [t2](double t) {
    double a = std::abs(t);
    if (a <= t2 || a >= 2.0 * t2) return 0.0;
    double tau = (a - t2) / t2;
    double dsmooth = 30.0 * tau * tau * (1.0 - tau) * (1.0 - tau);
    return -sgn(t) * dsmooth / t2;
  };
  return cut;
}

double beta_default(double p_minus, double p_plus, double c_imb) {
  if (!(p_minus > 1.0) || !(p_plus >= p_minus) || !(c_imb > 0.0))
    throw std::invalid_argument("beta selection: inadmissible arguments");
  double cap = std::min(1.0 / p_minus, 1.0 / (p_plus * std::pow(2.0, p_minus) *
                                              std::pow(c_imb, p_minus)));
  return 0.9 * cap;
}

std::vector<CheckItem> check_cutoff(const CutoffProfile& cut, double p_minus,
                                    double p_plus, double c_imb, int samples) {
  if (samples < 10)
    throw std::invalid_argument("cutoff check: need samples >= 10");
  const double t2 = cut.t2;
  double worst_plateau = 0.0, worst_outside = 0.0, worst_range = 0.0;
  double max_slope = 0.0, worst_sign = 0.0, worst_deriv = 0.0,
         worst_even = 0.0;
  for (int i = 0; i <= samples; ++i) {
    double t = -3.0 * t2 + 6.0 * t2 * i / samples;
    double r = cut.rho(t);
    double dr = cut.drho(t);
    if (std::abs(t) <= t2) worst_plateau = std::max(worst_plateau, std::abs(r - 1.0));
    if (std::abs(t) >= 2.0 * t2) worst_outside = std::max(worst_outside, std::abs(r));
    worst_range = std::max({worst_range, -r, r - 1.0});
    max_slope = std::max(max_slope, std::abs(dr));
    worst_sign = std::max(worst_sign, t * dr);
    worst_even = std::max(worst_even, std::abs(cut.rho(-t) - r));
    double h = 1e-6 * t2;
    double diff = (cut.rho(t + h) - cut.rho(t - h)) / (2.0 * h);
    worst_deriv = std::max(worst_deriv, std::abs(diff - dr) * t2);
  }
  double beta_cap = std::min(
      1.0 / p_minus,
      1.0 / (p_plus * std::pow(2.0, p_minus) * std::pow(c_imb, p_minus)));
  std::vector<CheckItem> out;
  out.push_back({"rho = 1 on the plateau", worst_plateau == 0.0,
                 worst_plateau, 0.0});
  out.push_back({"rho = 0 outside twice the plateau", worst_outside == 0.0,
                 worst_outside, 0.0});
  out.push_back({"0 <= rho <= 1", worst_range <= 0.0, worst_range, 0.0});
  out.push_back({"|rho'| <= 2/t2", max_slope <= 2.0 / t2 * (1.0 + 1e-12),
                 max_slope, 2.0 / t2});
  out.push_back({"t rho'(t) <= 0", worst_sign <= 1e-15 / t2, worst_sign, 0.0});
  out.push_back({"rho' matches rho by central differences",
                 worst_deriv <= 2e-4, worst_deriv, 2e-4});
  out.push_back({"rho is even", worst_even == 0.0, worst_even, 0.0});
  out.push_back({"beta inside the admissible interval",
                 cut.beta > 0.0 && cut.beta < beta_cap, cut.beta, beta_cap});
  return out;
}

Nonlinearity modified_nonlinearity(const Nonlinearity& base,
                                   const CutoffProfile& cut, double p_minus,
                                   bool enforce, int x_samples,
                                   int t_samples) {
  if (!(p_minus > 1.0))
    throw std::invalid_argument("modified reaction: need p- > 1");
  if (!(cut.beta > 0.0))
    throw std::invalid_argument("modified reaction: cutoff beta must be set");
  if (!(2.0 * cut.t2 < base.t0))
    throw std::invalid_argument(
        "modified reaction: the cutoff support must sit inside the declared "
        "oddness radius");
  const double t2 = cut.t2, beta = cut.beta;
  auto baseF = base.F;
  auto basef = base.f;
  auto rho = cut.rho;
  auto drho = cut.drho;

  auto Fmod = [baseF, rho, beta, p_minus](const Vec2& x, double t) {
    double r = rho(t);
    return r * baseF(x, t) + (1.0 - r) * beta * pow_abs(t, p_minus);
  };
  auto fmod = [baseF, basef, rho, drho, beta, p_minus](const Vec2& x,
                                                       double t) {
    double r = rho(t), dr = drho(t);
    return dr * baseF(x, t) + r * basef(x, t) -
           dr * beta * pow_abs(t, p_minus) +
           (1.0 - r) * beta * p_minus * pow_abs(t, p_minus - 1.0) * sgn(t);
  };

  // Sampled sign condition p- F~ - f~ t >= 0; its failure means the base
  // reaction lacks the small-t well the construction assumes.
  const BoxDomain& dom = base.growth_q.domain();
  Rng rng(1234);
  double worst = 0.0;
  for (int i = 0; i < x_samples; ++i) {
    Vec2 x(rng.uniform(dom.lo[0], dom.hi[0]),
           dom.dim == 2 ? rng.uniform(dom.lo[1], dom.hi[1]) : 0.0);
    for (int k = 1; k <= t_samples; ++k) {
      double t = 2.2 * t2 * k / t_samples;
      for (double tt : {t, -t}) {
        double defect = p_minus * Fmod(x, tt) - fmod(x, tt) * tt;
        worst = std::min(worst, defect);
      }
    }
  }
  std::string tag = base.tag + "-modified";
  if (worst < -1e-12) {
    if (enforce)
      throw std::invalid_argument(
          "modified reaction: sign condition p- F~ - f~ t >= 0 fails on a "
          "sampled point (the base reaction has no small-t well)");
    tag += "-defect-negative";
  }

  // Growth envelope in the constant exponent p-: outside the cutoff the
  // reaction is exactly beta p- |t|^{p- - 2} t; inside, sample and pad.
  double growth = beta * p_minus;
  for (int i = 0; i < x_samples; ++i) {
    Vec2 x(rng.uniform(dom.lo[0], dom.hi[0]),
           dom.dim == 2 ? rng.uniform(dom.lo[1], dom.hi[1]) : 0.0);
    for (int k = 1; k <= 4 * t_samples; ++k) {
      double t = 2.2 * t2 * k / (4.0 * t_samples);
      for (double tt : {t, -t})
        growth = std::max(growth, std::abs(fmod(x, tt)) /
                                      (1.0 + pow_abs(tt, p_minus - 1.0)));
    }
  }
  return {fmod, Fmod, 1.25 * growth, constant_exponent(dom, p_minus), 1e30,
          tag};
}

EnergyAssembly EnergyAssembly::build(const Grid& grid, const PairExponent& p,
                                     const PairQuadratureOptions& opts,
                                     int local_refine, bool include_local) {
  EnergyAssembly a{grid,
                   PairQuadrature::build(grid, p, PairRegion::full, opts),
                   LocalQuadrature::build(grid, local_refine),
                   {},
                   p.p_minus(),
                   p.p_plus(),
                   include_local};
  a.trace_expn.reserve(a.local.samples.size());
  for (const LocalSample& s : a.local.samples)
    a.trace_expn.push_back(p.trace(s.x));
  return a;
}

double EnergyAssembly::phi(const GridFunction& u) const {
  double acc = pair.energy(u);
  if (include_local) {
    for (std::size_t i = 0; i < local.samples.size(); ++i) {
      const LocalSample& s = local.samples[i];
      double e = trace_expn[i];
      acc += (s.w / e) * pow_abs(s.st.eval(u.values()), e);
    }
  }
  return acc;
}

Eigen::VectorXd EnergyAssembly::grad_phi(const GridFunction& u) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(grid.node_count());
  pair.add_gradient(u, g);
  if (include_local) {
    for (std::size_t i = 0; i < local.samples.size(); ++i) {
      const LocalSample& s = local.samples[i];
      double e = trace_expn[i];
      double ux = s.st.eval(u.values());
      double t = s.w * pow_abs(ux, e - 1.0) * sgn(ux);
      for (int k = 0; k < s.st.count; ++k) g[s.st.node[k]] += t * s.st.w[k];
    }
  }
  for (int i = 0; i < grid.node_count(); ++i)
    if (grid.is_boundary_node(i)) g[i] = 0.0;
  return g;
}

ModularSamples EnergyAssembly::norm_samples(const GridFunction& u) const {
  ModularSamples out = pair.samples(u);
  if (include_local)
    for (std::size_t i = 0; i < local.samples.size(); ++i) {
      const LocalSample& s = local.samples[i];
      out.add(s.st.eval(u.values()), trace_expn[i], s.w);
    }
  return out;
}

double EnergyAssembly::x_norm(const GridFunction& u) const {
  return luxemburg_root(norm_samples(u)).norm;
}

double EnergyAssembly::integral_F(const GridFunction& u,
                                  const Nonlinearity& nl) const {
  double acc = 0.0;
  for (const LocalSample& s : local.samples)
    acc += s.w * nl.F(s.x, s.st.eval(u.values()));
  return acc;
}

Eigen::VectorXd EnergyAssembly::grad_F(const GridFunction& u,
                                       const Nonlinearity& nl) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(grid.node_count());
  for (const LocalSample& s : local.samples) {
    double t = s.w * nl.f(s.x, s.st.eval(u.values()));
    for (int k = 0; k < s.st.count; ++k) g[s.st.node[k]] += t * s.st.w[k];
  }
  for (int i = 0; i < grid.node_count(); ++i)
    if (grid.is_boundary_node(i)) g[i] = 0.0;
  return g;
}

double energy_phi(const EnergyAssembly& a, const GridFunction& u) {
  return a.phi(u);
}

Eigen::VectorXd grad_phi(const EnergyAssembly& a, const GridFunction& u) {
  return a.grad_phi(u);
}

double energy_total(const EnergyAssembly& a, const GridFunction& u,
                    const Nonlinearity& nl) {
  return a.phi(u) - a.integral_F(u, nl);
}

Eigen::VectorXd grad_total(const EnergyAssembly& a, const GridFunction& u,
                           const Nonlinearity& nl) {
  return a.grad_phi(u) - a.grad_F(u, nl);
}

SolveReport minimize_energy(const GridFunction& start,
                            const EnergyAssembly& a, const Nonlinearity& nl,
                            const SolveOptions& opts) {
  if (!start.pinned())
    throw std::invalid_argument("energy descent: the start must be pinned");
  if (!start.grid().same_layout(a.grid))
    throw std::invalid_argument("energy descent: start grid mismatch");

  GridFunction u = start;
  double energy = energy_total(a, u, nl);
  Eigen::VectorXd g = grad_total(a, u, nl);
  double res = g.norm();

  SolveReport rep{u, {energy}, {res}, 0, false, energy, res, sup_norm(u),
                  false};
  double step_seed = opts.step0;
  for (int it = 0; it < opts.max_iters; ++it) {
    if (res <= opts.tol) {
      rep.converged = true;
      break;
    }
    const double slope = g.squaredNorm();
    double alpha = step_seed;
    bool accepted = false;
    for (int bt = 0; bt < opts.max_backtracks; ++bt) {
      GridFunction trial(a.grid, u.values() - alpha * g, true);
      double etrial = energy_total(a, trial, nl);
      if (etrial <= energy - opts.armijo * alpha * slope) {
        u = trial;
        energy = etrial;
        accepted = true;
        break;
      }
      alpha *= opts.backtrack;
    }
    if (!accepted) break; // line search exhausted: report non-convergence
    step_seed = std::min(opts.step0, 2.0 * alpha);
    g = grad_total(a, u, nl);
    res = g.norm();
    rep.energy_history.push_back(energy);
    rep.residual_history.push_back(res);
    rep.iterations = it + 1;
  }
  if (res <= opts.tol) rep.converged = true;
  rep.solution = u;
  rep.energy = energy;
  rep.residual = res;
  rep.sup = sup_norm(u);
  return rep;
}

SplusReport splus_probe(const EnergyAssembly& a, int trials,
                        std::uint64_t seed) {
  if (trials < 1)
    throw std::invalid_argument("monotonicity probe: need trials >= 1");
  SplusReport out;
  out.trials = trials;
  out.min_pairing = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    GridFunction u = interpolate(
        random_sine_field(a.grid.domain, seed + 2 * t, 4, 1.0), a.grid, true);
    GridFunction v = interpolate(
        random_sine_field(a.grid.domain, seed + 2 * t + 1, 4, 1.0), a.grid,
        true);
    double pairing =
        (a.grad_phi(u) - a.grad_phi(v)).dot(u.values() - v.values());
    out.min_pairing = std::min(out.min_pairing, pairing);
  }
  out.passed = out.min_pairing >= -1e-10;
  return out;
}

std::vector<GridFunction> bump_basis(const Grid& grid, int n) {
  if (n < 1) throw std::invalid_argument("bump basis: need n >= 1");
  const int dim = grid.domain.dim;
  const int n0 = grid.nodes[0];
  const int interior = n0 - 2;
  if (interior < 2 * n - 1)
    throw std::invalid_argument(
        "bump basis: the grid is too coarse to separate this many bumps");
  const int usable = interior - (n - 1);
  const int base_len = usable / n, rem = usable % n;
  constexpr double kPi = 3.14159265358979323846;

  std::vector<GridFunction> out;
  int cursor = 1;
  for (int k = 0; k < n; ++k) {
    const int len = base_len + (k < rem ? 1 : 0);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(grid.node_count());
    for (int l = 0; l < len; ++l) {
      const int i0 = cursor + l;
      const double s0 = std::sin(kPi * (l + 1) / (len + 1));
      if (dim == 1) {
        v[grid.node_index(i0)] = s0;
      } else {
        for (int i1 = 1; i1 < grid.nodes[1] - 1; ++i1)
          v[grid.node_index(i0, i1)] =
              s0 * std::sin(kPi * i1 / (grid.nodes[1] - 1.0));
      }
    }
    cursor += len + 1; // one zero node separates consecutive bumps
    out.emplace_back(grid, v, true);
  }
  return out;
}

double l2_distance(const GridFunction& u, const GridFunction& v) {
  if (!u.grid().same_layout(v.grid()))
    throw std::invalid_argument("nodal distance: grid mismatch");
  const Grid& g = u.grid();
  const int dim = g.domain.dim;
  double acc = 0.0;
  for (int i = 0; i < g.node_count(); ++i) {
    const int i0 = i % g.nodes[0];
    const int i1 = i / g.nodes[0];
    double mass = g.spacing(0) * ((i0 == 0 || i0 == g.nodes[0] - 1) ? 0.5 : 1.0);
    if (dim == 2)
      mass *= g.spacing(1) * ((i1 == 0 || i1 == g.nodes[1] - 1) ? 0.5 : 1.0);
    const double d = u.values()[i] - v.values()[i];
    acc += mass * d * d;
  }
  return std::sqrt(acc);
}

SubspaceReport subspace_negativity(int n, const EnergyAssembly& a,
                                   const Nonlinearity& base,
                                   const CutoffProfile& cut,
                                   int sphere_samples, std::uint64_t seed) {
  if (sphere_samples < 1)
    throw std::invalid_argument("subspace probe: need samples >= 1");
  const double pm = a.p_minus;
  const double t2 = cut.t2;
  Nonlinearity modified =
      modified_nonlinearity(base, cut, pm, /*enforce=*/false);

  SubspaceReport rep;
  rep.n = n;
  rep.sign_ok = modified.tag.find("defect-negative") == std::string::npos;

  std::vector<GridFunction> basis = bump_basis(a.grid, n);

  // Fixed direction set: random coefficient combinations of the bumps. The
  // comparison constants and the sphere evaluation share these directions,
  // so the chain sup|u| <= t3 is guaranteed at every tested point.
  Rng rng(seed);
  std::vector<GridFunction> dirs;
  std::vector<double> dir_norm, dir_sup, dir_lpm;
  for (int k = 0; k < sphere_samples; ++k) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(a.grid.node_count());
    for (int j = 0; j < n; ++j) v += rng.symmetric() * basis[j].values();
    GridFunction w(a.grid, v, true);
    double xnorm = a.x_norm(w);
    double sup = sup_norm(w);
    if (xnorm <= 0.0 || sup <= 0.0) continue;
    // Classical L^{p-} norm from the same local quadrature as integral_F.
    double lpm = 0.0;
    for (const LocalSample& s : a.local.samples)
      lpm += s.w * pow_abs(s.st.eval(v), pm);
    lpm = std::pow(lpm, 1.0 / pm);
    dirs.push_back(w);
    dir_norm.push_back(xnorm);
    dir_sup.push_back(sup);
    dir_lpm.push_back(lpm);
  }
  rep.sphere_samples = static_cast<int>(dirs.size());
  if (dirs.empty()) return rep;

  rep.c_n1 = std::numeric_limits<double>::infinity();
  rep.c_n2 = 0.0;
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    rep.c_n1 = std::min(rep.c_n1, dir_norm[k] / dir_sup[k]);
    rep.c_n2 = std::max(rep.c_n2, dir_norm[k] / dir_lpm[k]);
  }

  // Scan for the well radius t3 <= t2 with F(x,t) >= (2^{pm+1} c2^pm / pm)
  // |t|^{pm} at sampled x, checked at t3 and a few smaller radii.
  const double need = std::pow(2.0, pm + 1.0) * std::pow(rep.c_n2, pm) / pm;
  rep.scan_failed = true;
  rep.t3 = t2;
  for (int j = 0; j <= 60 && rep.scan_failed; ++j) {
    double t3 = t2 * std::pow(2.0, -j);
    bool ok = true;
    for (const LocalSample& s : a.local.samples) {
      for (double scale : {1.0, 0.5, 0.25, 0.125, 1.0 / 1024.0}) {
        double t = t3 * scale;
        if (!(base.F(s.x, t) >= need * std::pow(t, pm))) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) {
      rep.scan_failed = false;
      rep.t3 = t3;
    }
  }

  rep.r_n = std::min(0.5, rep.t3 * rep.c_n1);

  // Evaluate the modified energy at the shared directions scaled onto the
  // norm sphere of radius r_n (Luxemburg norms are exactly homogeneous).
  rep.sup_sample = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < dirs.size(); ++k) {
    double scale = rep.r_n / dir_norm[k];
    GridFunction u(a.grid, scale * dirs[k].values(), true);
    double e = a.phi(u) - a.integral_F(u, modified);
    rep.sup_sample = std::max(rep.sup_sample, e);
  }
  rep.passed = rep.sup_sample < 0.0;
  return rep;
}

std::vector<SolveReport> multistart_small_solutions(
    int starts, const EnergyAssembly& a, const Nonlinearity& modified,
    double t2, const SolveOptions& opts, std::uint64_t seed,
    double dedup_tol) {
  if (starts < 1)
    throw std::invalid_argument("multistart: need starts >= 1");
  const int max_bumps = std::max(1, std::min(4, (a.grid.nodes[0] - 1) / 2 - 1));
  std::vector<GridFunction> shapes = bump_basis(a.grid, max_bumps);
  Rng rng(seed);

  std::vector<SolveReport> kept;
  for (int k = 0; k < starts; ++k) {
    const GridFunction& shape = shapes[k % shapes.size()];
    double amp = 4.0 * t2 * std::pow(2.0, -(k / static_cast<int>(shapes.size())));
    amp *= 1.0 + 0.05 * rng.symmetric();
    // Alternate start signs: an odd reaction makes the energy even, so the
    // descent reaches both members of each +/- pair of minimizers.
    if (k % 2 == 1) amp = -amp;
    GridFunction start(a.grid, (amp / sup_norm(shape)) * shape.values(), true);
    SolveReport rep = minimize_energy(start, a, modified, opts);
    rep.flagged_small = rep.sup <= t2;
    if (!rep.converged) continue;
    bool dup = false;
    for (const SolveReport& other : kept) {
      if (l2_distance(rep.solution, other.solution) <= dedup_tol) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(rep);
  }
  return kept;
}

} // namespace pxlap
