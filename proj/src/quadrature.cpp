// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace pxlap {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sgn(double t) { return (t > 0.0) ? 1.0 : (t < 0.0 ? -1.0 : 0.0); }

void check_layout(const Grid& qgrid, const GridFunction& u, const char* who) {
  if (!u.grid().same_layout(qgrid))
    throw std::invalid_argument(std::string(who) +
                                ": function grid does not match quadrature");
}

} // namespace

LocalQuadrature LocalQuadrature::build(const Grid& grid, int refine) {
  if (refine < 1)
    throw std::invalid_argument("local quadrature: need refine >= 1");
  LocalQuadrature q;
  q.grid = grid;
  q.refine = refine;
  const int dim = grid.domain.dim;
  const int c0 = grid.cells(0);
  const int c1 = dim == 2 ? grid.cells(1) : 1;
  const int m0 = refine;
  const int m1 = dim == 2 ? refine : 1;
  const double h0 = grid.spacing(0);
  const double h1 = dim == 2 ? grid.spacing(1) : 1.0;
  const double w = (h0 / m0) * (h1 / m1);
  q.samples.reserve(static_cast<std::size_t>(c0) * c1 * m0 * m1);
  for (int cj = 0; cj < c1; ++cj)
    for (int ci = 0; ci < c0; ++ci)
      for (int sj = 0; sj < m1; ++sj)
        for (int si = 0; si < m0; ++si) {
          Vec2 x(grid.domain.lo[0] + (ci + (si + 0.5) / m0) * h0,
                 dim == 2 ? grid.domain.lo[1] + (cj + (sj + 0.5) / m1) * h1
                          : 0.0);
          q.samples.push_back({x, w, make_stencil(grid, x)});
        }
  return q;
}

double LocalQuadrature::integrate(
    const GridFunction& u,
    const std::function<double(const Vec2&, double)>& f) const {
  check_layout(grid, u, "local integrate");
  double acc = 0.0;
  for (const LocalSample& s : samples)
    acc += s.w * f(s.x, s.st.eval(u.values()));
  return acc;
}

double LocalQuadrature::pairing(const GridFunction& u,
                                const GridFunction& v) const {
  check_layout(grid, u, "local pairing");
  check_layout(grid, v, "local pairing");
  double acc = 0.0;
  for (const LocalSample& s : samples)
    acc += s.w * s.st.eval(u.values()) * s.st.eval(v.values());
  return acc;
}

void ModularSamples::append(const ModularSamples& other) {
  amp.insert(amp.end(), other.amp.begin(), other.amp.end());
  expn.insert(expn.end(), other.expn.begin(), other.expn.end());
  coef.insert(coef.end(), other.coef.begin(), other.coef.end());
}

double ModularSamples::value(double lambda) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i)
    acc += coef[i] * std::pow(std::abs(amp[i]) / lambda, expn[i]);
  return acc;
}

double ModularSamples::value_at_one() const {
  double acc = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i)
    acc += coef[i] * std::pow(std::abs(amp[i]), expn[i]);
  return acc;
}

double ModularSamples::max_amp() const {
  double m = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i)
    if (coef[i] > 0.0) m = std::max(m, std::abs(amp[i]));
  return m;
}

LuxemburgResult luxemburg_root(const ModularSamples& s, double tol) {
  LuxemburgResult out;
  double m = s.max_amp();
  if (m == 0.0) return out; // identically zero modular: norm 0 by convention
  // Decreasing map lambda -> value(lambda): bracket so value(lo) > 1 and
  // value(hi) <= 1, expanding outward when the seed guesses are wrong.
  double lo = m / 10.0, hi = 10.0 * m;
  int guard = 0;
  while (!(s.value(lo) > 1.0)) {
    lo /= 2.0;
    if (++guard > 200)
      throw std::runtime_error("luxemburg bisection: bracket search failed "
                               "(non-finite modular data?)");
  }
  guard = 0;
  while (!(s.value(hi) <= 1.0)) {
    hi *= 2.0;
    if (++guard > 200)
      throw std::runtime_error("luxemburg bisection: bracket search failed "
                               "(non-finite modular data?)");
  }
  while (hi - lo > tol * hi && out.iters < 400) {
    double mid = 0.5 * (lo + hi);
    if (s.value(mid) <= 1.0)
      hi = mid;
    else
      lo = mid;
    ++out.iters;
  }
  out.norm = hi; // the smallest lambda known to satisfy value(lambda) <= 1
  out.residual = std::abs(s.value(out.norm) - 1.0);
  return out;
}

namespace {

// One axis segment of the (possibly collar-extended) tensor partition.
struct Seg {
  double lo = 0.0, w = 1.0;
  bool interior = true;
};

struct BuildCtx {
  const Grid* grid = nullptr;
  const PairExponent* p = nullptr;
  int dim = 1;
  double s = 0.5;
  double ext_lo[2] = {0, 0}, ext_hi[2] = {0, 0}; // collar box bounds
  bool full = false;
};

// Distance from an interior point to the collar-box boundary: the radius
// beyond which the far-field tail takes over.
double tail_radius(const BuildCtx& c, const Vec2& x) {
  double r = std::numeric_limits<double>::infinity();
  for (int a = 0; a < c.dim; ++a)
    r = std::min({r, x[a] - c.ext_lo[a], c.ext_hi[a] - x[a]});
  return r;
}

// Midpoint sub-samples of one cell: m0 x m1 points with equal weights.
struct CellSamples {
  std::vector<Vec2> x;
  double w = 0.0;
};

CellSamples subdivide(const Seg& s0, const Seg& s1, int m0, int m1) {
  CellSamples out;
  out.w = (s0.w / m0) * (s1.w / m1);
  out.x.reserve(static_cast<std::size_t>(m0) * m1);
  for (int j = 0; j < m1; ++j)
    for (int i = 0; i < m0; ++i)
      out.x.push_back(Vec2(s0.lo + (i + 0.5) * s0.w / m0,
                           s1.lo + (j + 0.5) * s1.w / m1));
  return out;
}

} // namespace

PairQuadrature PairQuadrature::build(const Grid& grid, const PairExponent& p,
                                     PairRegion region,
                                     const PairQuadratureOptions& opts) {
  if (grid.domain.dim != p.domain().dim ||
      (grid.domain.lo - p.domain().lo).norm() != 0.0 ||
      (grid.domain.hi - p.domain().hi).norm() != 0.0)
    throw std::invalid_argument("pair quadrature: exponent domain differs "
                                "from the grid domain");
  if (opts.refine < 1 || opts.exterior_refine < 1 || opts.diag_refine < 0 ||
      opts.angular_nodes < 4)
    throw std::invalid_argument("pair quadrature: inadmissible options");

  PairQuadrature q;
  q.grid_ = grid;
  q.region_ = region;

  BuildCtx ctx;
  ctx.grid = &grid;
  ctx.p = &p;
  ctx.dim = grid.domain.dim;
  ctx.s = p.s();
  ctx.full = region == PairRegion::full;
  const int dim = ctx.dim;
  const double N = static_cast<double>(dim);
  const int d = opts.diag_refine > 0 ? opts.diag_refine : (dim == 1 ? 8 : 4);
  const int M = opts.angular_nodes;

  double W = 0.0;
  if (ctx.full) {
    W = opts.collar_width < 0.0 ? grid.domain.diameter() : opts.collar_width;
    if (W + 1e-12 < grid.domain.diameter())
      throw std::invalid_argument(
          "pair quadrature: collar width below the domain diameter breaks "
          "the collar/tail partition");
  }
  for (int a = 0; a < 2; ++a) {
    ctx.ext_lo[a] = grid.domain.lo[a] - W;
    ctx.ext_hi[a] = grid.domain.hi[a] + W;
  }

  // Per-axis segment lists. In 1D the second axis carries one unit-width
  // pseudo-segment centred at 0 so the tensor loops stay uniform.
  std::array<std::vector<Seg>, 2> axes;
  std::array<int, 2> first_int = {0, 0}, last_int = {0, 0};
  for (int a = 0; a < 2; ++a) {
    if (a < dim) {
      const int c = grid.cells(a);
      const double h = grid.spacing(a);
      int mext = 0;
      double wext = 0.0;
      if (ctx.full) {
        mext = static_cast<int>(std::ceil(W / h));
        wext = W / mext;
        for (int i = 0; i < mext; ++i)
          axes[a].push_back({grid.domain.lo[a] - W + i * wext, wext, false});
      }
      first_int[a] = mext;
      last_int[a] = mext + c - 1;
      for (int i = 0; i < c; ++i)
        axes[a].push_back({grid.domain.lo[a] + i * h, h, true});
      if (ctx.full)
        for (int i = 0; i < mext; ++i)
          axes[a].push_back({grid.domain.hi[a] + i * wext, wext, false});
    } else {
      axes[a].push_back({-0.5, 1.0, true});
      first_int[a] = last_int[a] = 0;
    }
  }

  struct CellRef {
    int i0, i1;
  };
  std::vector<CellRef> interior, exterior;
  for (int j = 0; j < static_cast<int>(axes[1].size()); ++j)
    for (int i = 0; i < static_cast<int>(axes[0].size()); ++i) {
      if (axes[0][i].interior && axes[1][j].interior)
        interior.push_back({i, j});
      else
        exterior.push_back({i, j});
    }
  q.stats_.interior_cells = static_cast<int>(interior.size());
  q.stats_.exterior_cells = static_cast<int>(exterior.size());

  const int m0 = opts.refine, m1 = dim == 2 ? opts.refine : 1;
  const int e0 = opts.exterior_refine, e1 = dim == 2 ? opts.exterior_refine : 1;
  const int d0 = d, d1 = dim == 2 ? d : 1;

  // Emits one numeric pair sample; the y side may live outside Omega, where
  // the zero extension replaces the stencil.
  auto emit_pair = [&](const Vec2& x, double wx, const Vec2& y, double wy,
                       double sym, bool y_exterior) {
    if (y_exterior && (x - y).norm() > tail_radius(ctx, x))
      return; // handed over to the analytic tail
    double pxy = p(x, y);
    double r = (x - y).norm();
    PairSampleRec rec;
    rec.sx = make_stencil(grid, x);
    rec.sy = y_exterior ? Stencil{} : make_stencil(grid, y);
    rec.expn = pxy;
    rec.coef = sym * wx * wy * std::pow(r, -(N + ctx.s * pxy));
    q.pairs_.push_back(rec);
  };

  auto emit_cross = [&](const CellRef& a, const CellRef& b, int ma0, int ma1,
                        int mb0, int mb1, bool b_exterior) {
    CellSamples sa = subdivide(axes[0][a.i0], axes[1][a.i1], ma0, ma1);
    CellSamples sb = subdivide(axes[0][b.i0], axes[1][b.i1], mb0, mb1);
    for (const Vec2& x : sa.x)
      for (const Vec2& y : sb.x)
        emit_pair(x, sa.w, y, sb.w, 2.0, b_exterior);
  };

  // Same-subcell square: closed-form model with the slope/gradient of the
  // interpolant and the trace exponent frozen on the subcell.
  auto emit_diagonal = [&](const CellRef& c, int sub0, int sub1) {
    const Seg& s0 = axes[0][c.i0];
    const Seg& s1 = axes[1][c.i1];
    if (dim == 1) {
      const double delta = s0.w / d0;
      const double xc = s0.lo + (sub0 + 0.5) * delta;
      const double pbar = p.trace(Vec2(xc, 0.0));
      const double kappa = pbar * (1.0 - ctx.s);
      DiagSampleRec1 rec;
      rec.left = c.i0 - first_int[0];
      rec.inv_h = 1.0 / s0.w;
      rec.expn = pbar;
      rec.coef = 2.0 * std::pow(delta, kappa + 1.0) / (kappa * (kappa + 1.0));
      q.diag1_.push_back(rec);
      return;
    }
    const double dx = s0.w / d0, dy = s1.w / d1;
    const Vec2 xc(s0.lo + (sub0 + 0.5) * dx, s1.lo + (sub1 + 0.5) * dy);
    const double pbar = p.trace(xc);
    const double kappa = pbar * (1.0 - ctx.s);
    const double tc = (xc[0] - s0.lo) / s0.w;
    const double vc = (xc[1] - s1.lo) / s1.w;
    const int ci = c.i0 - first_int[0], cj = c.i1 - first_int[1];
    DiagSampleRec2 base;
    base.node = {grid.node_index(ci, cj), grid.node_index(ci + 1, cj),
                 grid.node_index(ci, cj + 1), grid.node_index(ci + 1, cj + 1)};
    base.gx = {-(1.0 - vc) / s0.w, (1.0 - vc) / s0.w, -vc / s0.w, vc / s0.w};
    base.gy = {-(1.0 - tc) / s1.w, -tc / s1.w, (1.0 - tc) / s1.w, tc / s1.w};
    base.expn = pbar;
    for (int k = 0; k < M; ++k) {
      const double phi = (k + 0.5) * 2.0 * kPi / M;
      const double ct = std::cos(phi), st = std::sin(phi);
      const double ac = std::abs(ct), as = std::abs(st);
      const double R = std::min(ac > 0.0 ? dx / ac : 1e300,
                                as > 0.0 ? dy / as : 1e300);
      const double radial = dx * dy * std::pow(R, kappa) / kappa -
                            (dx * as + dy * ac) * std::pow(R, kappa + 1.0) /
                                (kappa + 1.0) +
                            ac * as * std::pow(R, kappa + 2.0) / (kappa + 2.0);
      DiagSampleRec2 rec = base;
      rec.ct = ct;
      rec.st = st;
      rec.coef = (2.0 * kPi / M) * radial;
      q.diag2_.push_back(rec);
    }
  };

  // Interior x interior: every unordered cell pair exactly once.
  const int na0 = static_cast<int>(interior.size());
  for (int a = 0; a < na0; ++a) {
    for (int b = a; b < na0; ++b) {
      const CellRef& ca = interior[a];
      const CellRef& cb = interior[b];
      const int dist =
          std::max(std::abs(ca.i0 - cb.i0), std::abs(ca.i1 - cb.i1));
      if (dist >= 2) {
        emit_cross(ca, cb, m0, m1, m0, m1, false);
        continue;
      }
      // Touching: subdivide both cells into d subcells per axis; subcell
      // midpoint samples except for the singular same-subcell squares.
      CellSamples sa = subdivide(axes[0][ca.i0], axes[1][ca.i1], d0, d1);
      if (a == b) {
        const int nseg = d0 * d1;
        for (int u = 0; u < nseg; ++u) {
          emit_diagonal(ca, u % d0, u / d0);
          for (int v = u + 1; v < nseg; ++v)
            emit_pair(sa.x[u], sa.w, sa.x[v], sa.w, 2.0, false);
        }
      } else {
        CellSamples sb = subdivide(axes[0][cb.i0], axes[1][cb.i1], d0, d1);
        for (const Vec2& x : sa.x)
          for (const Vec2& y : sb.x)
            emit_pair(x, sa.w, y, sb.w, 2.0, false);
      }
    }
  }

  if (ctx.full) {
    // Interior x exterior within the collar, then the analytic tails.
    for (const CellRef& ca : interior) {
      for (const CellRef& cb : exterior) {
        const int dist =
            std::max(std::abs(ca.i0 - cb.i0), std::abs(ca.i1 - cb.i1));
        if (dist >= 2)
          emit_cross(ca, cb, m0, m1, e0, e1, true);
        else
          emit_cross(ca, cb, d0, d1, d0, d1, true);
      }
    }
    const double omega_n = dim == 1 ? 2.0 : 2.0 * kPi;
    for (const CellRef& ca : interior) {
      CellSamples sa = subdivide(axes[0][ca.i0], axes[1][ca.i1], m0, m1);
      for (const Vec2& x : sa.x) {
        const double pbar = p.trace(x);
        const double rt = tail_radius(ctx, x);
        TailSampleRec rec;
        rec.sx = make_stencil(grid, x);
        rec.expn = pbar;
        rec.coef = 2.0 * sa.w * omega_n * std::pow(rt, -ctx.s * pbar) /
                   (ctx.s * pbar);
        q.tails_.push_back(rec);
      }
    }
  }

  q.stats_.pair_samples = static_cast<std::int64_t>(q.pairs_.size());
  q.stats_.diag_samples =
      static_cast<std::int64_t>(q.diag1_.size() + q.diag2_.size());
  q.stats_.tail_samples = static_cast<std::int64_t>(q.tails_.size());
  return q;
}

namespace {

double diag2_direction(const DiagSampleRec2& r, const Eigen::VectorXd& u) {
  double a = 0.0;
  for (int i = 0; i < 4; ++i)
    a += u[r.node[i]] * (r.gx[i] * r.ct + r.gy[i] * r.st);
  return a;
}

} // namespace

double PairQuadrature::modular(const GridFunction& u) const {
  check_layout(grid_, u, "pair modular");
  const Eigen::VectorXd& uv = u.values();
  double acc = 0.0;
  for (const PairSampleRec& r : pairs_)
    acc += r.coef * std::pow(std::abs(r.sx.eval(uv) - r.sy.eval(uv)), r.expn);
  for (const DiagSampleRec1& r : diag1_)
    acc += r.coef *
           std::pow(std::abs((uv[r.left + 1] - uv[r.left]) * r.inv_h), r.expn);
  for (const DiagSampleRec2& r : diag2_)
    acc += r.coef * std::pow(std::abs(diag2_direction(r, uv)), r.expn);
  for (const TailSampleRec& r : tails_)
    acc += r.coef * std::pow(std::abs(r.sx.eval(uv)), r.expn);
  return acc;
}

ModularSamples PairQuadrature::samples(const GridFunction& u) const {
  check_layout(grid_, u, "pair samples");
  const Eigen::VectorXd& uv = u.values();
  ModularSamples out;
  out.amp.reserve(pairs_.size() + diag1_.size() + diag2_.size() +
                  tails_.size());
  for (const PairSampleRec& r : pairs_)
    out.add(r.sx.eval(uv) - r.sy.eval(uv), r.expn, r.coef);
  for (const DiagSampleRec1& r : diag1_)
    out.add((uv[r.left + 1] - uv[r.left]) * r.inv_h, r.expn, r.coef);
  for (const DiagSampleRec2& r : diag2_)
    out.add(diag2_direction(r, uv), r.expn, r.coef);
  for (const TailSampleRec& r : tails_)
    out.add(r.sx.eval(uv), r.expn, r.coef);
  return out;
}

double PairQuadrature::energy(const GridFunction& u) const {
  check_layout(grid_, u, "pair energy");
  const Eigen::VectorXd& uv = u.values();
  double acc = 0.0;
  for (const PairSampleRec& r : pairs_)
    acc += (r.coef / r.expn) *
           std::pow(std::abs(r.sx.eval(uv) - r.sy.eval(uv)), r.expn);
  for (const DiagSampleRec1& r : diag1_)
    acc += (r.coef / r.expn) *
           std::pow(std::abs((uv[r.left + 1] - uv[r.left]) * r.inv_h), r.expn);
  for (const DiagSampleRec2& r : diag2_)
    acc += (r.coef / r.expn) * std::pow(std::abs(diag2_direction(r, uv)), r.expn);
  for (const TailSampleRec& r : tails_)
    acc += (r.coef / r.expn) * std::pow(std::abs(r.sx.eval(uv)), r.expn);
  return acc;
}

double PairQuadrature::weak(const GridFunction& u,
                            const GridFunction& v) const {
  check_layout(grid_, u, "pair weak form");
  check_layout(grid_, v, "pair weak form");
  const Eigen::VectorXd& uv = u.values();
  const Eigen::VectorXd& vv = v.values();
  double acc = 0.0;
  for (const PairSampleRec& r : pairs_) {
    double du = r.sx.eval(uv) - r.sy.eval(uv);
    double dv = r.sx.eval(vv) - r.sy.eval(vv);
    acc += r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du) * dv;
  }
  for (const DiagSampleRec1& r : diag1_) {
    double du = (uv[r.left + 1] - uv[r.left]) * r.inv_h;
    double dv = (vv[r.left + 1] - vv[r.left]) * r.inv_h;
    acc += r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du) * dv;
  }
  for (const DiagSampleRec2& r : diag2_) {
    double du = diag2_direction(r, uv);
    double dv = diag2_direction(r, vv);
    acc += r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du) * dv;
  }
  for (const TailSampleRec& r : tails_) {
    double du = r.sx.eval(uv);
    double dv = r.sx.eval(vv);
    acc += r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du) * dv;
  }
  return acc;
}

void PairQuadrature::add_gradient(const GridFunction& u,
                                  Eigen::VectorXd& g) const {
  check_layout(grid_, u, "pair gradient");
  if (g.size() != grid_.node_count())
    throw std::invalid_argument("pair gradient: output vector size mismatch");
  const Eigen::VectorXd& uv = u.values();
  for (const PairSampleRec& r : pairs_) {
    double du = r.sx.eval(uv) - r.sy.eval(uv);
    double t = r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du);
    for (int k = 0; k < r.sx.count; ++k) g[r.sx.node[k]] += t * r.sx.w[k];
    for (int k = 0; k < r.sy.count; ++k) g[r.sy.node[k]] -= t * r.sy.w[k];
  }
  for (const DiagSampleRec1& r : diag1_) {
    double du = (uv[r.left + 1] - uv[r.left]) * r.inv_h;
    double t = r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du);
    g[r.left + 1] += t * r.inv_h;
    g[r.left] -= t * r.inv_h;
  }
  for (const DiagSampleRec2& r : diag2_) {
    double du = diag2_direction(r, uv);
    double t = r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du);
    for (int i = 0; i < 4; ++i)
      g[r.node[i]] += t * (r.gx[i] * r.ct + r.gy[i] * r.st);
  }
  for (const TailSampleRec& r : tails_) {
    double du = r.sx.eval(uv);
    double t = r.coef * std::pow(std::abs(du), r.expn - 1.0) * sgn(du);
    for (int k = 0; k < r.sx.count; ++k) g[r.sx.node[k]] += t * r.sx.w[k];
  }
}

PairQuadrature PairQuadrature::transposed() const {
  PairQuadrature q = *this;
  for (PairSampleRec& r : q.pairs_) std::swap(r.sx, r.sy);
  return q;
}

} // namespace pxlap
