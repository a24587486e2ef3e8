// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pxlap/rng.hpp"

namespace pxlap {

namespace {

// Closed linspace over [a, b] with m >= 2 points.
double linspace_at(double a, double b, int m, int i) {
  return a + (b - a) * (static_cast<double>(i) / (m - 1));
}

void check_scalar_bounds(double lower, double upper) {
  if (!(lower > 1.0))
    throw std::invalid_argument("exponent bounds: need lower > 1, got " +
                                std::to_string(lower));
  if (!(lower <= upper) || !std::isfinite(upper))
    throw std::invalid_argument("exponent bounds: need lower <= upper < inf");
}

// All closed-box sample points, `m` per axis.
std::vector<Vec2> box_samples(const BoxDomain& dom, int m) {
  std::vector<Vec2> pts;
  if (dom.dim == 1) {
    pts.reserve(m);
    for (int i = 0; i < m; ++i)
      pts.push_back(Vec2(linspace_at(dom.lo[0], dom.hi[0], m, i), 0.0));
  } else {
    pts.reserve(static_cast<std::size_t>(m) * m);
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i)
        pts.push_back(Vec2(linspace_at(dom.lo[0], dom.hi[0], m, i),
                           linspace_at(dom.lo[1], dom.hi[1], m, j)));
  }
  return pts;
}

Vec2 clamp_to_box(const BoxDomain& dom, Vec2 v) {
  for (int a = 0; a < dom.dim; ++a)
    v[a] = std::min(std::max(v[a], dom.lo[a]), dom.hi[a]);
  return v;
}

// Squared distance from v to the closed box, accumulated axis by axis in a
// fixed order so that swapping the two blocks of a pair point is exact.
double box_dist2(const BoxDomain& dom, const Vec2& v) {
  double d2 = 0.0;
  for (int a = 0; a < dom.dim; ++a) {
    double d = std::max({0.0, dom.lo[a] - v[a], v[a] - dom.hi[a]});
    d2 += d * d;
  }
  return d2;
}

} // namespace

ScalarExponent::ScalarExponent(Field evaluator, double lower, double upper,
                               const BoxDomain& domain, int validation_points)
    : eval_(std::move(evaluator)), lower_(lower), upper_(upper),
      domain_(domain) {
  check_scalar_bounds(lower_, upper_);
  if (validation_points < 2)
    throw std::invalid_argument("exponent validation: need >= 2 points/axis");
  for (const Vec2& x : box_samples(domain_, validation_points)) {
    double q = eval_(x);
    if (!std::isfinite(q) || q < lower_ || q > upper_)
      throw std::invalid_argument(
          "scalar exponent leaves its declared bounds [" +
          std::to_string(lower_) + ", " + std::to_string(upper_) +
          "] at a sampled point (value " + std::to_string(q) + ")");
  }
}

PairExponent::PairExponent(PairField evaluator, double p_minus, double p_plus,
                           double s, const BoxDomain& domain,
                           int validation_points)
    : eval_(std::move(evaluator)), p_minus_(p_minus), p_plus_(p_plus), s_(s),
      domain_(domain) {
  check_scalar_bounds(p_minus_, p_plus_);
  if (!(s_ > 0.0) || !(s_ < 1.0))
    throw std::invalid_argument("pair exponent: need s in (0,1)");
  // Keep the total pair count near validation_points^2 in either dimension.
  int m = domain_.dim == 1 ? validation_points
                           : std::max(2, static_cast<int>(std::lround(
                                             std::sqrt(validation_points))));
  std::vector<Vec2> pts = box_samples(domain_, m);
  for (const Vec2& x : pts) {
    for (const Vec2& y : pts) {
      double pxy = eval_(x, y);
      double pyx = eval_(y, x);
      if (!std::isfinite(pxy) || pxy < p_minus_ || pxy > p_plus_)
        throw std::invalid_argument(
            "pair exponent leaves its declared bounds [" +
            std::to_string(p_minus_) + ", " + std::to_string(p_plus_) +
            "] at a sampled pair (value " + std::to_string(pxy) + ")");
      if (std::abs(pxy - pyx) > 1e-12 * std::max(1.0, std::abs(pxy)))
        throw std::invalid_argument(
            "pair exponent is not symmetric at a sampled pair");
    }
  }
}

double critical_exponent(const PairExponent& p, const Vec2& x) {
  double N = static_cast<double>(p.domain().dim);
  double t = p.trace(x);
  if (!(p.s() * t < N))
    throw std::domain_error(
        "critical exponent undefined: s * p(x,x) >= dimension");
  return N * t / (N - p.s() * t);
}

LogHolderReport check_log_holder(const PairExponent& p,
                                 const std::vector<double>& epsilons,
                                 int samples, std::uint64_t halton_offset) {
  if (samples <= 0)
    throw std::invalid_argument("check_log_holder: need samples > 0");
  for (double e : epsilons)
    if (!(e > 0.0))
      throw std::invalid_argument("check_log_holder: need epsilon > 0");

  const BoxDomain& dom = p.domain();
  const int N = dom.dim;
  const int pair_dim = 2 * N;

  // Deterministic pair set with 0 < |x-y| < 1/2: half rejection-sampled
  // from the pair box, half constructed with log-spaced radii so the
  // small-separation regime (where the log factor is large) is covered.
  std::vector<std::pair<Vec2, Vec2>> pairs;
  pairs.reserve(samples);
  {
    std::uint64_t idx = halton_offset;
    double h[4];
    int want = samples / 2;
    std::uint64_t budget = static_cast<std::uint64_t>(samples) * 400 + 1000;
    while (static_cast<int>(pairs.size()) < want && budget-- > 0) {
      halton_point(idx++, pair_dim, h);
      Vec2 x(0, 0), y(0, 0);
      for (int a = 0; a < N; ++a) {
        x[a] = dom.lo[a] + dom.length(a) * h[a];
        y[a] = dom.lo[a] + dom.length(a) * h[N + a];
      }
      double d = (x - y).norm();
      if (d > 0.0 && d < 0.5) pairs.emplace_back(x, y);
    }
    std::uint64_t jdx = halton_offset;
    const double rmin = 1e-6;
    while (static_cast<int>(pairs.size()) < samples && budget-- > 0) {
      halton_point(jdx, pair_dim, h);
      Vec2 x(0, 0);
      for (int a = 0; a < N; ++a) x[a] = dom.lo[a] + dom.length(a) * h[a];
      double r = rmin * std::pow(0.49 / rmin, h[N]);
      Vec2 dir(1.0, 0.0);
      if (N == 2) {
        double phi = 2.0 * 3.14159265358979323846 * h[N + 1];
        dir = Vec2(std::cos(phi), std::sin(phi));
      } else if (jdx % 2 == 0) {
        dir = Vec2(-1.0, 0.0);
      }
      Vec2 y = clamp_to_box(dom, Vec2(x + r * dir));
      ++jdx;
      double d = (x - y).norm();
      if (d > 0.0 && d < 0.5) pairs.emplace_back(x, y);
    }
  }
  if (pairs.empty())
    throw std::invalid_argument(
        "check_log_holder: no admissible pairs in this domain");

  LogHolderReport rep;
  rep.pairs_used = static_cast<int>(pairs.size());
  rep.sup_value = std::numeric_limits<double>::infinity();
  for (double eps : epsilons) {
    double sup = 0.0;
    for (const auto& [x, y] : pairs) {
      double center = p(x, y);
      double inf_ball = center;
      // 32 quasi-random points of the radius-eps ball around (x,y) in pair
      // space, clamped into the pair box.
      std::uint64_t bidx = halton_offset;
      int got = 0;
      std::uint64_t guard = 4000;
      double h[4];
      while (got < 32 && guard-- > 0) {
        halton_point(bidx++, pair_dim, h);
        double v[4];
        double n2 = 0.0;
        for (int d = 0; d < pair_dim; ++d) {
          v[d] = 2.0 * h[d] - 1.0;
          n2 += v[d] * v[d];
        }
        if (n2 > 1.0) continue;
        ++got;
        Vec2 xb = x, yb = y;
        for (int a = 0; a < N; ++a) {
          xb[a] += eps * v[a];
          yb[a] += eps * v[N + a];
        }
        xb = clamp_to_box(dom, xb);
        yb = clamp_to_box(dom, yb);
        inf_ball = std::min(inf_ball, p(xb, yb));
      }
      double d = (x - y).norm();
      sup = std::max(sup, (center - inf_ball) * std::log(1.0 / d));
    }
    rep.per_epsilon.emplace_back(eps, sup);
    rep.sup_value = std::min(rep.sup_value, sup);
  }
  return rep;
}

ScalarExponent constant_exponent(const BoxDomain& domain, double q) {
  return ScalarExponent([q](const Vec2&) { return q; }, q, q, domain, 2);
}

ScalarExponent affine_exponent(const BoxDomain& domain, double base,
                               const Vec2& slope) {
  Vec2 g = slope;
  if (domain.dim == 1) g[1] = 0.0;
  Field f = [base, g](const Vec2& x) { return base + g.dot(x); };
  // An affine field attains its extremes at box corners.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int cx = 0; cx < 2; ++cx)
    for (int cy = 0; cy < 2; ++cy) {
      Vec2 corner(cx ? domain.hi[0] : domain.lo[0],
                  cy ? domain.hi[1] : domain.lo[1]);
      double v = f(corner);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return ScalarExponent(f, lo, hi, domain);
}

namespace {

double table_eval(const std::vector<double>& breaks,
                  const std::vector<double>& values, double t) {
  if (t <= breaks.front()) return values.front();
  if (t >= breaks.back()) return values.back();
  auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
  std::size_t i = static_cast<std::size_t>(it - breaks.begin());
  double w = (t - breaks[i - 1]) / (breaks[i] - breaks[i - 1]);
  return values[i - 1] + w * (values[i] - values[i - 1]);
}

void validate_table(const std::vector<double>& breaks,
                    const std::vector<double>& values) {
  if (breaks.size() < 2 || breaks.size() != values.size())
    throw std::invalid_argument(
        "table exponent: need matching breaks/values lists, length >= 2");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]))
      throw std::invalid_argument(
          "table exponent: breaks must be strictly increasing");
}

} // namespace

ScalarExponent table_exponent(const BoxDomain& domain,
                              std::vector<double> breaks,
                              std::vector<double> values) {
  validate_table(breaks, values);
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  Field f = [breaks = std::move(breaks), values = std::move(values)](
                const Vec2& x) { return table_eval(breaks, values, x[0]); };
  return ScalarExponent(f, lo, hi, domain);
}

ScalarExponent trace_exponent(const PairExponent& p) {
  // Copy the evaluator by value so the result does not dangle.
  auto eval = p;
  return ScalarExponent([eval](const Vec2& x) { return eval.trace(x); },
                        p.p_minus(), p.p_plus(), p.domain());
}

ScalarExponent max_exponent(const ScalarExponent& a, const ScalarExponent& b) {
  const BoxDomain& da = a.domain();
  const BoxDomain& db = b.domain();
  if (da.dim != db.dim || (da.lo - db.lo).norm() != 0.0 ||
      (da.hi - db.hi).norm() != 0.0)
    throw std::invalid_argument("max_exponent: domains differ");
  ScalarExponent ac = a, bc = b;
  return ScalarExponent(
      [ac, bc](const Vec2& x) { return std::max(ac(x), bc(x)); },
      std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()), da);
}

PairExponent constant_pair_exponent(const BoxDomain& domain, double p,
                                    double s) {
  return PairExponent([p](const Vec2&, const Vec2&) { return p; }, p, p, s,
                      domain, 2);
}

PairExponent affine_trace_exponent(const BoxDomain& domain, double base,
                                   const Vec2& slope, double s) {
  Vec2 g = slope;
  if (domain.dim == 1) g[1] = 0.0;
  // Midpoints (x+y)/2 of box pairs fill the box itself, so corner values of
  // the affine field are exact bounds here too.
  PairField f = [base, g](const Vec2& x, const Vec2& y) {
    return base + 0.5 * (g.dot(x) + g.dot(y));
  };
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int cx = 0; cx < 2; ++cx)
    for (int cy = 0; cy < 2; ++cy) {
      Vec2 corner(cx ? domain.hi[0] : domain.lo[0],
                  cy ? domain.hi[1] : domain.lo[1]);
      double v = base + g.dot(corner);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return PairExponent(f, lo, hi, s, domain);
}

PairExponent table_pair_exponent(const BoxDomain& domain,
                                 std::vector<double> breaks,
                                 std::vector<double> values, double s) {
  validate_table(breaks, values);
  double lo = *std::min_element(values.begin(), values.end());
  double hi = *std::max_element(values.begin(), values.end());
  PairField f = [breaks = std::move(breaks), values = std::move(values)](
                    const Vec2& x, const Vec2& y) {
    return table_eval(breaks, values, 0.5 * (x[0] + y[0]));
  };
  return PairExponent(f, lo, hi, s, domain);
}

PairExponent example_exponent(const BoxDomain& domain, double p0, double R,
                              double s) {
  if (!(p0 > 1.0))
    throw std::invalid_argument("example exponent: need p0 > 1");
  if (!(R > 0.0))
    throw std::invalid_argument("example exponent: need R > 0");
  // Largest pair-space norm over the closed hull Omega x Omega.
  double hull2 = 0.0;
  for (int a = 0; a < domain.dim; ++a)
    hull2 += std::max(domain.lo[a] * domain.lo[a], domain.hi[a] * domain.hi[a]);
  double hull_norm = std::sqrt(2.0 * hull2);
  double w = R - hull_norm;
  if (!(w > 0.0))
    throw std::invalid_argument(
        "example exponent: the pair hull does not fit inside the radius-R "
        "ball");
  BoxDomain dom = domain;
  PairField f = [dom, p0, w](const Vec2& x, const Vec2& y) {
    double dist = std::sqrt(box_dist2(dom, x) + box_dist2(dom, y));
    double xi;
    if (dist <= 0.0) {
      xi = 1.0;
    } else {
      double tau = dist / w;
      xi = tau < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - tau * tau)) : 0.0;
    }
    return p0 + (x - y).norm() * xi;
  };
  // On supp(xi) the pair norm stays below R, and |x-y| <= sqrt(2)|(x,y)|.
  return PairExponent(f, p0, p0 + std::sqrt(2.0) * R, s, domain);
}

} // namespace pxlap
