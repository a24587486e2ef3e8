// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#include "pxlap/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace pxlap {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

} // namespace

ConfigError::ConfigError(const std::string& file, int line,
                         const std::string& message)
    : std::runtime_error(line > 0
                             ? file + ":" + std::to_string(line) + ": " + message
                             : file + ": " + message),
      line_(line) {}

KeyValueFile KeyValueFile::parse(std::istream& in,
                                 const std::string& filename) {
  KeyValueFile kv;
  kv.filename_ = filename;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']' || t.size() < 3)
        throw ConfigError(filename, lineno, "malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ConfigError(filename, lineno, "empty section name");
      continue;
    }
    std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(filename, lineno,
                        "expected 'key = value' or a [section] header");
    std::string key = trim(t.substr(0, eq));
    std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw ConfigError(filename, lineno, "empty key");
    if (!section.empty()) key = section + "." + key;
    auto [it, inserted] = kv.entries_.insert({key, Entry{value, lineno, false}});
    if (!inserted)
      throw ConfigError(filename, lineno,
                        "duplicate key '" + key + "' (first set on line " +
                            std::to_string(it->second.line) + ")");
  }
  return kv;
}

bool KeyValueFile::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

void KeyValueFile::fail(const std::string& key, const std::string& msg) const {
  auto it = entries_.find(key);
  int line = it == entries_.end() ? 0 : it->second.line;
  throw ConfigError(filename_, line, "key '" + key + "': " + msg);
}

void KeyValueFile::reject(const std::string& key,
                          const std::string& msg) const {
  fail(key, msg);
}

std::string KeyValueFile::get_string(const std::string& key,
                                     const std::string& def) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return def;
  it->second.used = true;
  return it->second.value;
}

bool KeyValueFile::get_bool(const std::string& key, bool def) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return def;
  it->second.used = true;
  const std::string& v = it->second.value;
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail(key, "expected a boolean (true/false/1/0/yes/no), got '" + v + "'");
}

int KeyValueFile::get_int(const std::string& key, int def) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return def;
  it->second.used = true;
  const std::string& v = it->second.value;
  try {
    std::size_t pos = 0;
    long long n = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    if (n < std::numeric_limits<int>::min() ||
        n > std::numeric_limits<int>::max())
      throw std::out_of_range("int range");
    return static_cast<int>(n);
  } catch (const std::exception&) {
    fail(key, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t KeyValueFile::get_u64(const std::string& key,
                                    std::uint64_t def) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return def;
  it->second.used = true;
  const std::string& v = it->second.value;
  try {
    if (!v.empty() && v[0] == '-') throw std::invalid_argument("negative");
    std::size_t pos = 0;
    unsigned long long n = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(n);
  } catch (const std::exception&) {
    fail(key, "expected an unsigned integer, got '" + v + "'");
  }
}

double KeyValueFile::get_double(const std::string& key, double def) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return def;
  it->second.used = true;
  const std::string& v = it->second.value;
  try {
    std::size_t pos = 0;
    double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    if (!std::isfinite(x)) throw std::invalid_argument("not finite");
    return x;
  } catch (const std::exception&) {
    fail(key, "expected a finite number, got '" + v + "'");
  }
}

std::vector<double> KeyValueFile::get_list(const std::string& key,
                                           const std::vector<double>& def) {
  auto it = entries_.find(key);
  if (it == entries_.end()) return def;
  it->second.used = true;
  std::string v = it->second.value;
  std::replace(v.begin(), v.end(), ',', ' ');
  std::istringstream is(v);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t pos = 0;
      double x = std::stod(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument("trailing characters");
      if (!std::isfinite(x)) throw std::invalid_argument("not finite");
      out.push_back(x);
    } catch (const std::exception&) {
      fail(key, "expected a list of numbers, got '" + it->second.value + "'");
    }
  }
  if (out.empty()) fail(key, "expected a non-empty list of numbers");
  return out;
}

void KeyValueFile::finish() const {
  const Entry* worst = nullptr;
  std::string worst_key;
  for (const auto& [key, entry] : entries_) {
    if (entry.used) continue;
    if (worst == nullptr || entry.line < worst->line) {
      worst = &entry;
      worst_key = key;
    }
  }
  if (worst != nullptr)
    throw ConfigError(filename_, worst->line,
                      "unknown key '" + worst_key + "'");
}

namespace {

ExponentSpec read_exponent(KeyValueFile& kv, const std::string& prefix,
                           bool pair_field, ExponentSpec spec) {
  auto key = [&](const char* leaf) { return prefix + "." + leaf; };
  spec.kind = kv.get_string(key("kind"), spec.kind);
  const std::vector<std::string> kinds =
      pair_field ? std::vector<std::string>{"constant", "affine", "table",
                                            "example"}
                 : std::vector<std::string>{"constant", "affine", "table",
                                            "trace"};
  if (std::find(kinds.begin(), kinds.end(), spec.kind) == kinds.end())
    kv.reject(key("kind"), "unknown exponent kind '" + spec.kind + "'");
  spec.value = kv.get_double(key("value"), spec.value);
  spec.base = kv.get_double(key("base"), spec.base);
  spec.slope[0] = kv.get_double(key("slope_x"), spec.slope[0]);
  spec.slope[1] = kv.get_double(key("slope_y"), spec.slope[1]);
  spec.p0 = kv.get_double(key("p0"), spec.p0);
  spec.radius = kv.get_double(key("radius"), spec.radius);
  spec.breaks = kv.get_list(key("breaks"), spec.breaks);
  spec.values = kv.get_list(key("values"), spec.values);
  if (spec.kind == "table" &&
      (spec.breaks.size() < 2 || spec.breaks.size() != spec.values.size()))
    kv.reject(key("breaks"),
              "table kind needs breaks and values lists of equal length >= 2");
  return spec;
}

void require_choice(KeyValueFile& kv, const std::string& key,
                    const std::string& value,
                    const std::vector<std::string>& allowed) {
  if (std::find(allowed.begin(), allowed.end(), value) != allowed.end())
    return;
  std::string msg = "expected one of {";
  for (std::size_t i = 0; i < allowed.size(); ++i)
    msg += (i ? ", " : "") + allowed[i];
  msg += "}, got '" + value + "'";
  kv.reject(key, msg);
}

} // namespace

ExperimentConfig ExperimentConfig::from_stream(std::istream& in,
                                               const std::string& filename) {
  KeyValueFile kv = KeyValueFile::parse(in, filename);
  ExperimentConfig cfg;
  // Defaults that differ per field of the shared ExponentSpec type; the
  // triple (p = 2, r = 1.35, q = 4) is a coherent sub/super-critical split.
  cfg.q_spec.value = 4.0;
  cfg.r_spec.value = 1.35;

  int dim = kv.get_int("domain.dim", 1);
  if (dim != 1 && dim != 2) kv.reject("domain.dim", "dim must be 1 or 2");
  double ax = kv.get_double("domain.ax", 0.0);
  double bx = kv.get_double("domain.bx", 1.0);
  if (!(bx > ax)) kv.reject("domain.bx", "need bx > ax");
  if (dim == 1) {
    cfg.domain = BoxDomain::interval(ax, bx);
  } else {
    double ay = kv.get_double("domain.ay", 0.0);
    double by = kv.get_double("domain.by", 1.0);
    if (!(by > ay)) kv.reject("domain.by", "need by > ay");
    cfg.domain = BoxDomain::rectangle(ax, bx, ay, by);
  }

  cfg.nodes_x = kv.get_int("grid.nodes_x", cfg.nodes_x);
  cfg.nodes_y = kv.get_int("grid.nodes_y", dim == 2 ? 33 : 0);
  if (cfg.nodes_x < 2 || cfg.nodes_x > 100000)
    kv.reject("grid.nodes_x", "nodes_x must lie in [2, 100000]");
  if (dim == 1 && cfg.nodes_y != 0)
    kv.reject("grid.nodes_y", "nodes_y must be 0 (or absent) when dim = 1");
  if (dim == 2 && (cfg.nodes_y < 2 || cfg.nodes_y > 100000))
    kv.reject("grid.nodes_y", "nodes_y must lie in [2, 100000] when dim = 2");

  cfg.s = kv.get_double("exponents.s", cfg.s);
  if (!(cfg.s > 0.0 && cfg.s < 1.0))
    kv.reject("exponents.s", "s must lie in (0, 1)");
  cfg.p_spec = read_exponent(kv, "exponents.p", true, cfg.p_spec);
  cfg.q_spec = read_exponent(kv, "exponents.q", false, cfg.q_spec);
  cfg.r_spec = read_exponent(kv, "exponents.r", false, cfg.r_spec);

  cfg.quad.refine = kv.get_int("quadrature.refine", cfg.quad.refine);
  cfg.quad.diag_refine =
      kv.get_int("quadrature.diag_refine", cfg.quad.diag_refine);
  cfg.quad.angular_nodes =
      kv.get_int("quadrature.angular_nodes", cfg.quad.angular_nodes);
  cfg.quad.collar_width =
      kv.get_double("quadrature.collar_width", cfg.quad.collar_width);
  cfg.quad.exterior_refine =
      kv.get_int("quadrature.exterior_refine", cfg.quad.exterior_refine);
  cfg.local_refine = kv.get_int("quadrature.local_refine", cfg.local_refine);
  if (cfg.quad.refine < 1 || cfg.quad.refine > 64)
    kv.reject("quadrature.refine", "refine must lie in [1, 64]");
  if (cfg.quad.diag_refine < 0 || cfg.quad.diag_refine > 64)
    kv.reject("quadrature.diag_refine", "diag_refine must lie in [0, 64]");
  if (cfg.quad.angular_nodes < 4 || cfg.quad.angular_nodes > 4096)
    kv.reject("quadrature.angular_nodes",
              "angular_nodes must lie in [4, 4096]");
  if (cfg.quad.exterior_refine < 1 || cfg.quad.exterior_refine > 64)
    kv.reject("quadrature.exterior_refine",
              "exterior_refine must lie in [1, 64]");
  if (cfg.local_refine < 1 || cfg.local_refine > 64)
    kv.reject("quadrature.local_refine", "local_refine must lie in [1, 64]");

  cfg.bisect_tol = kv.get_double("tolerances.bisect_tol", cfg.bisect_tol);
  cfg.assert_tol = kv.get_double("tolerances.assert_tol", cfg.assert_tol);
  cfg.equivalence_slack =
      kv.get_double("tolerances.equivalence_slack", cfg.equivalence_slack);
  if (!(cfg.bisect_tol > 0.0))
    kv.reject("tolerances.bisect_tol", "bisect_tol must be positive");
  if (!(cfg.assert_tol > 0.0))
    kv.reject("tolerances.assert_tol", "assert_tol must be positive");
  if (!(cfg.equivalence_slack > 0.0))
    kv.reject("tolerances.equivalence_slack",
              "equivalence_slack must be positive");

  cfg.nl_kind = kv.get_string("reaction.kind", cfg.nl_kind);
  require_choice(kv, "reaction.kind", cfg.nl_kind, {"zero", "prototype"});
  cfg.lambda = kv.get_double("reaction.lambda", cfg.lambda);
  if (!(cfg.lambda > 0.0))
    kv.reject("reaction.lambda", "lambda must be positive");
  cfg.t2 = kv.get_double("reaction.t2", cfg.t2);
  if (!(cfg.t2 > 0.0)) kv.reject("reaction.t2", "t2 must be positive");
  cfg.beta_mode = kv.get_string("reaction.beta_mode", cfg.beta_mode);
  require_choice(kv, "reaction.beta_mode", cfg.beta_mode, {"auto", "fixed"});
  cfg.beta_value = kv.get_double("reaction.beta_value", cfg.beta_value);
  if (cfg.beta_mode == "fixed" && !(cfg.beta_value > 0.0))
    kv.reject("reaction.beta_value",
              "beta_value must be positive when beta_mode = fixed");
  cfg.c_imb = kv.get_double("reaction.c_imb", cfg.c_imb);
  if (!(cfg.c_imb > 0.0)) kv.reject("reaction.c_imb", "c_imb must be positive");

  cfg.solve.tol = kv.get_double("solve.tol", cfg.solve.tol);
  cfg.solve.max_iters = kv.get_int("solve.max_iters", cfg.solve.max_iters);
  cfg.solve.armijo = kv.get_double("solve.armijo", cfg.solve.armijo);
  cfg.solve.backtrack = kv.get_double("solve.backtrack", cfg.solve.backtrack);
  cfg.solve.step0 = kv.get_double("solve.step0", cfg.solve.step0);
  cfg.solve.max_backtracks =
      kv.get_int("solve.max_backtracks", cfg.solve.max_backtracks);
  cfg.starts = kv.get_int("solve.starts", cfg.starts);
  cfg.start_amplitude =
      kv.get_double("solve.start_amplitude", cfg.start_amplitude);
  if (!(cfg.solve.tol > 0.0)) kv.reject("solve.tol", "tol must be positive");
  if (cfg.solve.max_iters < 1)
    kv.reject("solve.max_iters", "max_iters must be >= 1");
  if (!(cfg.solve.armijo > 0.0 && cfg.solve.armijo < 1.0))
    kv.reject("solve.armijo", "armijo must lie in (0, 1)");
  if (!(cfg.solve.backtrack > 0.0 && cfg.solve.backtrack < 1.0))
    kv.reject("solve.backtrack", "backtrack must lie in (0, 1)");
  if (!(cfg.solve.step0 > 0.0))
    kv.reject("solve.step0", "step0 must be positive");
  if (cfg.solve.max_backtracks < 1)
    kv.reject("solve.max_backtracks", "max_backtracks must be >= 1");
  if (cfg.starts < 1) kv.reject("solve.starts", "starts must be >= 1");
  if (!(cfg.start_amplitude > 0.0))
    kv.reject("solve.start_amplitude", "start_amplitude must be positive");

  cfg.dg_n_max = kv.get_int("levels.n_max", cfg.dg_n_max);
  if (cfg.dg_n_max < 1 || cfg.dg_n_max > 200)
    kv.reject("levels.n_max", "n_max must lie in [1, 200]");
  cfg.kstar_mode = kv.get_string("levels.kstar_mode", cfg.kstar_mode);
  require_choice(kv, "levels.kstar_mode", cfg.kstar_mode, {"auto", "fixed"});
  cfg.kstar_value = kv.get_double("levels.kstar_value", cfg.kstar_value);
  if (cfg.kstar_mode == "fixed" && !(cfg.kstar_value > 0.0))
    kv.reject("levels.kstar_value",
              "kstar_value must be positive when kstar_mode = fixed");
  cfg.dg_d1 = kv.get_double("levels.d1", cfg.dg_d1);
  cfg.dg_d2 = kv.get_double("levels.d2", cfg.dg_d2);
  if (!(cfg.dg_d1 > 0.0)) kv.reject("levels.d1", "d1 must be positive");
  if (!(cfg.dg_d2 >= cfg.dg_d1)) kv.reject("levels.d2", "need d2 >= d1");

  cfg.suite_norm_checks =
      kv.get_int("suite.norm_checks", cfg.suite_norm_checks);
  cfg.suite_pairs = kv.get_int("suite.pairs", cfg.suite_pairs);
  cfg.subspace_n = kv.get_int("suite.subspace_n", cfg.subspace_n);
  cfg.scaled_solutions =
      kv.get_int("suite.scaled_solutions", cfg.scaled_solutions);
  cfg.log_holder_samples =
      kv.get_int("suite.log_holder_samples", cfg.log_holder_samples);
  cfg.epsilons = kv.get_list("suite.epsilons", cfg.epsilons);
  if (cfg.suite_norm_checks < 1)
    kv.reject("suite.norm_checks", "norm_checks must be >= 1");
  if (cfg.suite_pairs < 1) kv.reject("suite.pairs", "pairs must be >= 1");
  if (cfg.subspace_n < 1) kv.reject("suite.subspace_n", "subspace_n must be >= 1");
  if (cfg.scaled_solutions < 1)
    kv.reject("suite.scaled_solutions", "scaled_solutions must be >= 1");
  if (cfg.log_holder_samples < 8)
    kv.reject("suite.log_holder_samples", "log_holder_samples must be >= 8");
  for (double e : cfg.epsilons)
    if (!(e > 0.0))
      kv.reject("suite.epsilons", "every epsilon must be positive");

  cfg.function.kind = kv.get_string("function.kind", cfg.function.kind);
  require_choice(kv, "function.kind", cfg.function.kind,
                 {"linear", "constant", "sine", "bump", "random"});
  cfg.function.value = kv.get_double("function.value", cfg.function.value);
  cfg.function.mode = kv.get_int("function.mode", cfg.function.mode);
  cfg.function.terms = kv.get_int("function.terms", cfg.function.terms);
  cfg.function.pinned = kv.get_bool("function.pinned", cfg.function.pinned);
  if (cfg.function.mode < 1) kv.reject("function.mode", "mode must be >= 1");
  if (cfg.function.terms < 1)
    kv.reject("function.terms", "terms must be >= 1");

  cfg.out_dir = kv.get_string("run.out_dir", cfg.out_dir);
  if (cfg.out_dir.empty())
    kv.reject("run.out_dir", "out_dir must not be empty");
  cfg.seed = kv.get_u64("run.seed", cfg.seed);
  cfg.threads = kv.get_int("run.threads", cfg.threads);
  if (cfg.threads < 1) kv.reject("run.threads", "threads must be >= 1");
  cfg.verbose = kv.get_bool("run.verbose", cfg.verbose);

  kv.finish();

  // Smoke-build every configured object so that semantic rejections from the
  // constructors (exponent bounds, table shapes, reaction coherence) surface
  // as configuration errors rather than as assertion failures later.
  try {
    Grid grid = cfg.make_grid();
    cfg.make_p();
    cfg.make_q();
    cfg.make_r();
    cfg.make_nonlinearity();
    cfg.make_function(grid);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(filename, 0,
                      std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, 0, "cannot open file");
  return from_stream(in, path);
}

Grid ExperimentConfig::make_grid() const {
  return Grid::make(domain, nodes_x, nodes_y);
}

PairExponent ExperimentConfig::make_p() const {
  if (p_spec.kind == "constant")
    return constant_pair_exponent(domain, p_spec.value, s);
  if (p_spec.kind == "affine")
    return affine_trace_exponent(domain, p_spec.base, p_spec.slope, s);
  if (p_spec.kind == "table")
    return table_pair_exponent(domain, p_spec.breaks, p_spec.values, s);
  if (p_spec.kind == "example")
    return example_exponent(domain, p_spec.p0, p_spec.radius, s);
  throw std::invalid_argument("unknown pair exponent kind: " + p_spec.kind);
}

namespace {

ScalarExponent make_scalar(const ExperimentConfig& cfg,
                           const ExponentSpec& spec) {
  if (spec.kind == "constant")
    return constant_exponent(cfg.domain, spec.value);
  if (spec.kind == "affine")
    return affine_exponent(cfg.domain, spec.base, spec.slope);
  if (spec.kind == "table")
    return table_exponent(cfg.domain, spec.breaks, spec.values);
  if (spec.kind == "trace") return trace_exponent(cfg.make_p());
  throw std::invalid_argument("unknown scalar exponent kind: " + spec.kind);
}

} // namespace

ScalarExponent ExperimentConfig::make_q() const {
  return make_scalar(*this, q_spec);
}

ScalarExponent ExperimentConfig::make_r() const {
  return make_scalar(*this, r_spec);
}

Nonlinearity ExperimentConfig::make_nonlinearity() const {
  if (nl_kind == "zero") return zero_nonlinearity(domain);
  return prototype_nonlinearity(lambda, make_r(), make_q());
}

GridFunction ExperimentConfig::make_function(const Grid& grid) const {
  const FunctionSpec& fn = function;
  const BoxDomain dom = domain;
  if (fn.kind == "random")
    return interpolate(random_sine_field(dom, seed, fn.terms, fn.value), grid,
                       fn.pinned);
  Field g;
  if (fn.kind == "linear") {
    double a = fn.value;
    g = [a](const Vec2& x) { return a * x[0]; };
  } else if (fn.kind == "constant") {
    double a = fn.value;
    g = [a](const Vec2&) { return a; };
  } else if (fn.kind == "sine") {
    double a = fn.value;
    int mode = fn.mode;
    g = [a, mode, dom](const Vec2& x) {
      double v = a;
      for (int ax = 0; ax < dom.dim; ++ax) {
        double t = (x[ax] - dom.lo[ax]) / dom.length(ax);
        v *= std::sin(mode * kPi * t);
      }
      return v;
    };
  } else if (fn.kind == "bump") {
    double a = fn.value;
    g = [a, dom](const Vec2& x) {
      double v = a;
      for (int ax = 0; ax < dom.dim; ++ax) {
        double mid = 0.5 * (dom.lo[ax] + dom.hi[ax]);
        double tau = 2.0 * (x[ax] - mid) / dom.length(ax);
        if (std::abs(tau) >= 1.0) return 0.0;
        v *= std::exp(1.0 - 1.0 / (1.0 - tau * tau));
      }
      return v;
    };
  } else {
    throw std::invalid_argument("unknown function kind: " + fn.kind);
  }
  return interpolate(g, grid, fn.pinned);
}

} // namespace pxlap
