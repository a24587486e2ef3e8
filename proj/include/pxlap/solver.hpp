// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_SOLVER_HPP
#define PXLAP_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pxlap/checks.hpp"
#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/modular.hpp"
#include "pxlap/quadrature.hpp"

namespace pxlap {

/// Reaction term f(x,t) with primitive F(x,t) (F(x,0)=0), declared growth
/// envelope |f| <= C (1 + |t|^{q(x)-1}), and the radius t0 inside which f is
/// odd in t. The declared properties are checked by sampling, not proven.
struct Nonlinearity {
  std::function<double(const Vec2&, double)> f;
  std::function<double(const Vec2&, double)> F;
  double growth_C = 0.0;
  ScalarExponent growth_q;
  double t0 = 0.0;
  std::string tag;
};

Nonlinearity zero_nonlinearity(const BoxDomain& domain);

/// f(x,t) = lambda |t|^{r(x)-2} t - |t|^{q(x)-2} t with primitive
/// F(x,t) = lambda |t|^{r(x)}/r(x) - |t|^{q(x)}/q(x); odd for every t.
Nonlinearity prototype_nonlinearity(double lambda, const ScalarExponent& r,
                                    const ScalarExponent& q_growth);

/// Samples the declared properties: growth envelope, dF/dt = f by central
/// differences (1e-5 relative), and oddness inside |t| < t0.
std::vector<CheckItem> check_nonlinearity(const Nonlinearity& nl,
                                          double t_range, int x_samples = 16,
                                          int t_samples = 25,
                                          std::uint64_t seed = 99);

/// Even cutoff profile: rho = 1 on [-t2, t2], 0 outside [-2 t2, 2 t2],
/// |rho'| <= 2/t2 and t rho'(t) <= 0. beta is the coefficient of the
/// replacement well beta |t|^{p-} outside the plateau.
struct CutoffProfile {
  double t2 = 0.1;
  double beta = 0.0;
  std::function<double(double)> rho;
  std::function<double(double)> drho;
};

/// Quintic smoothstep profile on [t2, 2 t2]; max |rho'| = 15/(8 t2).
/// beta is left 0 and must be set by the caller (see beta_default).
CutoffProfile cutoff_default(double t2);

/// 0.9 * min{ 1/p-, 1/(p+ 2^{p-} c_imb^{p-}) }.
double beta_default(double p_minus, double p_plus, double c_imb);

std::vector<CheckItem> check_cutoff(const CutoffProfile& cut, double p_minus,
                                    double p_plus, double c_imb,
                                    int samples = 1000);

/// Modified reaction: F~ = rho F + (1 - rho) beta |t|^{p-} and its exact
/// t-derivative. The defect p- F~ - f~ t must be >= 0 on an (x,t) sample
/// grid; a violation means the base term fails the small-t sign condition
/// and construction aborts unless enforce is false (negative controls).
Nonlinearity modified_nonlinearity(const Nonlinearity& base,
                                   const CutoffProfile& cut, double p_minus,
                                   bool enforce = true, int x_samples = 25,
                                   int t_samples = 40);

/// Precomputed discretization of the energy
///   Phi(u) = pair part over the full region / p(x,y)
///          + integral |u|^{p(x,x)} / p(x,x)   (optional local term),
/// shared by the energy, its exact nodal gradient, and the space norm.
struct EnergyAssembly {
  Grid grid;
  PairQuadrature pair;
  LocalQuadrature local;
  std::vector<double> trace_expn; // p(x,x) per local sample
  double p_minus = 2.0, p_plus = 2.0;
  bool include_local = true;

  static EnergyAssembly build(const Grid& grid, const PairExponent& p,
                              const PairQuadratureOptions& opts = {},
                              int local_refine = 2, bool include_local = true);

  double phi(const GridFunction& u) const;
  /// Exact derivative of phi with boundary rows zeroed (pinned space).
  Eigen::VectorXd grad_phi(const GridFunction& u) const;
  /// Combined modular samples (pair part + local trace part): the space norm.
  ModularSamples norm_samples(const GridFunction& u) const;
  double x_norm(const GridFunction& u) const;
  double integral_F(const GridFunction& u, const Nonlinearity& nl) const;
  /// Derivative of integral F, boundary rows zeroed.
  Eigen::VectorXd grad_F(const GridFunction& u, const Nonlinearity& nl) const;
};

double energy_phi(const EnergyAssembly& a, const GridFunction& u);
Eigen::VectorXd grad_phi(const EnergyAssembly& a, const GridFunction& u);
/// E(u) = phi(u) - integral F(x, u).
double energy_total(const EnergyAssembly& a, const GridFunction& u,
                    const Nonlinearity& nl);
Eigen::VectorXd grad_total(const EnergyAssembly& a, const GridFunction& u,
                           const Nonlinearity& nl);

struct SolveOptions {
  double tol = 1e-6;     // Euclidean norm of the nodal gradient
  int max_iters = 4000;
  double armijo = 1e-4;
  double backtrack = 0.5;
  double step0 = 1.0;
  int max_backtracks = 60;
};

struct SolveReport {
  GridFunction solution;
  std::vector<double> energy_history;
  std::vector<double> residual_history;
  int iterations = 0;
  bool converged = false;
  double energy = 0.0;
  double residual = 0.0;
  double sup = 0.0;
  bool flagged_small = false; // sup <= t2: untouched by the cutoff
};

/// Armijo-backtracking gradient descent on E = phi - integral F. The energy
/// history is nonincreasing by construction; non-convergence is reported in
/// the flags, never thrown.
SolveReport minimize_energy(const GridFunction& start,
                            const EnergyAssembly& a, const Nonlinearity& nl,
                            const SolveOptions& opts = {});

struct SplusReport {
  int trials = 0;
  double min_pairing = 0.0;
  bool passed = false;
};

/// Monotonicity probe <phi'(u) - phi'(v), u - v> >= -1e-10 on random pinned
/// pairs; the discrete energy is convex, so this bounds rounding only.
SplusReport splus_probe(const EnergyAssembly& a, int trials,
                        std::uint64_t seed);

/// n smooth bumps with pairwise disjoint supports (separated by at least one
/// zero node), pinned, spanning the test subspace.
std::vector<GridFunction> bump_basis(const Grid& grid, int n);

struct SubspaceReport {
  int n = 0;
  double c_n1 = 0.0;      // min over samples of x_norm / sup_norm
  double c_n2 = 0.0;      // max over samples of x_norm / L^{p-} norm
  double t3 = 0.0;
  double r_n = 0.0;
  double sup_sample = 0.0; // sup of the modified energy on the norm sphere
  bool passed = false;     // sup_sample < 0
  bool scan_failed = false; // small-t well scan found no admissible t3
  bool sign_ok = false;     // modified-term defect stayed >= 0
  int sphere_samples = 0;
};

/// Builds the n-bump subspace, estimates the norm-comparison constants on a
/// fixed direction sample, picks t3 by scanning F(x,t)/|t|^{p-} downward
/// from t2, sets the sphere radius r_n = min(1/2, t3 * c_n1), and evaluates
/// the modified energy at the same directions scaled to the sphere.
SubspaceReport subspace_negativity(int n, const EnergyAssembly& a,
                                   const Nonlinearity& base,
                                   const CutoffProfile& cut,
                                   int sphere_samples = 200,
                                   std::uint64_t seed = 7);

/// Nodal L2 distance with trapezoid node masses (boundary nodes half weight).
double l2_distance(const GridFunction& u, const GridFunction& v);

/// Descent from scaled bump starts of decreasing amplitude and alternating
/// sign; solutions are deduplicated by pairwise l2_distance > dedup_tol, and
/// each report is flagged when sup <= t2 (the cutoff never activated, so the
/// solution solves the unmodified problem).
std::vector<SolveReport> multistart_small_solutions(
    int starts, const EnergyAssembly& a, const Nonlinearity& modified,
    double t2, const SolveOptions& opts = {}, std::uint64_t seed = 11,
    double dedup_tol = 1e-4);

} // namespace pxlap

#endif
