// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_QUADRATURE_HPP
#define PXLAP_QUADRATURE_HPP

#include <array>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"

namespace pxlap {

/// Midpoint-rule quadrature over the cells of a grid, `refine` sub-samples
/// per cell per axis. Sample order is fixed (cells row-major, sub-samples
/// lexicographic) so sums are bit-reproducible.
struct LocalSample {
  Vec2 x;
  double w;
  Stencil st;
};

struct LocalQuadrature {
  Grid grid;
  int refine = 2;
  std::vector<LocalSample> samples;

  static LocalQuadrature build(const Grid& grid, int refine = 2);

  /// Sum of w * f(x, u(x)) over samples.
  double integrate(const GridFunction& u,
                   const std::function<double(const Vec2&, double)>& f) const;
  /// Sum of w * u(x) * v(x); u and v must share this quadrature's grid layout.
  double pairing(const GridFunction& u, const GridFunction& v) const;
};

/// Flat sample form of a modular: value(lambda) = sum coef * (amp/lambda)^expn
/// with coef >= 0, expn > 1. Every integral family in the library lowers to
/// this shape, which makes the Luxemburg bisection a pure array sweep and
/// keeps the scaling u -> u/lambda exact rather than re-quadratured.
struct ModularSamples {
  std::vector<double> amp, expn, coef;

  void add(double a, double e, double c) {
    amp.push_back(a);
    expn.push_back(e);
    coef.push_back(c);
  }
  void append(const ModularSamples& other);
  std::size_t size() const { return amp.size(); }
  double value(double lambda) const;
  double value_at_one() const;
  /// Largest |amp| among samples with coef > 0 (bracket seed); 0 if none.
  double max_amp() const;
};

struct LuxemburgResult {
  double norm = 0.0;
  int iters = 0;
  double residual = 0.0;
};

/// Bracketed bisection for inf{lambda > 0 : value(lambda) <= 1}. Returns 0
/// for an identically vanishing sample set. The initial bracket
/// [max_amp/10, 10*max_amp] is doubled outward; 200 failed doublings on
/// either side abort with std::runtime_error (non-finite data).
LuxemburgResult luxemburg_root(const ModularSamples& s, double tol = 1e-10);

enum class PairRegion {
  omega_omega, // Omega x Omega (the seminorm of the function space)
  full         // (box x box) minus (complement x complement): the operator
};

struct PairQuadratureOptions {
  int refine = 2;        // sub-samples per cell per axis, separated pairs
  int diag_refine = 0;   // sub-cells per axis near the diagonal; 0 = auto
  int angular_nodes = 16; // angular midpoint nodes of the 2D diagonal model
  double collar_width = -1.0; // exterior collar width; < 0 = domain diameter
  int exterior_refine = 1;    // sub-samples per axis, separated exterior pairs
};

/// One numeric pair sample; sy.count == 0 marks an exterior y where the
/// zero extension makes u(y) = v(y) = 0. coef folds quadrature weights, the
/// kernel |x-y|^{-(N + s p)}, and the x<->y symmetry factor.
struct PairSampleRec {
  Stencil sx, sy;
  double coef, expn;
};

/// Same-subcell contribution in 1D, integrated in closed form with the
/// interpolant slope and the trace exponent frozen on the subcell:
/// contribution = coef * |slope|^expn.
struct DiagSampleRec1 {
  int left;       // left node of the owning cell
  double inv_h;   // slope = (u[left+1] - u[left]) * inv_h
  double coef, expn;
};

/// Same-subcell contribution in 2D: frozen bilinear gradient g at the subcell
/// center, radial direction integrated in closed form, angle by midpoint
/// rule. One record per angular node: contribution = coef * |g . theta|^expn
/// with g = (sum gx[i] u[node[i]], sum gy[i] u[node[i]]), theta = (ct, st).
struct DiagSampleRec2 {
  std::array<int, 4> node;
  std::array<double, 4> gx, gy;
  double ct, st, coef, expn;
};

/// Far-field tail beyond the collar for one interior sample x: the exact
/// integral of |u(x)|^p over {|x-y| > Rt(x)} with the exponent frozen at the
/// trace p(x,x); contribution = coef * |u(x)|^expn.
struct TailSampleRec {
  Stencil sx;
  double coef, expn;
};

struct PairQuadratureStats {
  std::int64_t pair_samples = 0;
  std::int64_t diag_samples = 0;
  std::int64_t tail_samples = 0;
  int interior_cells = 0;
  int exterior_cells = 0;
};

/// Precomputed quadrature of the double integral
///   integral integral |u(x)-u(y)|^{p(x,y)} / |x-y|^{N + s p(x,y)} dx dy
/// over the requested region, reusable across many functions on the same
/// grid. Cell pairs touching the diagonal are subdivided, the singular
/// same-subcell squares are replaced by the frozen closed-form model, and in
/// the full region the exterior splits exactly into a numeric collar part
/// (restricted to the ball |x-y| <= Rt(x), which contains Omega) and the
/// analytic tail beyond it.
class PairQuadrature {
 public:
  static PairQuadrature build(const Grid& grid, const PairExponent& p,
                              PairRegion region,
                              const PairQuadratureOptions& opts = {});

  double modular(const GridFunction& u) const;
  /// Flattened (amp, expn, coef) triples of the modular for root-finding.
  ModularSamples samples(const GridFunction& u) const;
  /// Same sum with each term divided by its exponent (energy weighting).
  double energy(const GridFunction& u) const;
  /// Double integral of |du|^{p-2} du dv against the kernel; dv uses the
  /// same sample set, so for constant p weak(u,u) == modular(u) exactly.
  double weak(const GridFunction& u, const GridFunction& v) const;
  /// Accumulates d(energy)/d(nodal values) into g (no boundary masking).
  void add_gradient(const GridFunction& u, Eigen::VectorXd& g) const;

  const PairQuadratureStats& stats() const { return stats_; }
  PairRegion region() const { return region_; }
  const Grid& grid() const { return grid_; }

  /// Swaps the x and y roles of every numeric pair sample; only meaningful
  /// for the omega_omega region (exterior samples are one-sided).
  PairQuadrature transposed() const;

 private:
  Grid grid_;
  PairRegion region_ = PairRegion::omega_omega;
  PairQuadratureStats stats_;
  std::vector<PairSampleRec> pairs_;
  std::vector<DiagSampleRec1> diag1_;
  std::vector<DiagSampleRec2> diag2_;
  std::vector<TailSampleRec> tails_;
};

} // namespace pxlap

#endif
