// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_CONFIG_HPP
#define PXLAP_CONFIG_HPP

#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "pxlap/exponents.hpp"
#include "pxlap/grid.hpp"
#include "pxlap/quadrature.hpp"
#include "pxlap/solver.hpp"

namespace pxlap {

/// Configuration failure with a file:line prefix; commands map it to exit 1.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& file, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Flat sectioned key = value text. Lines are blank, comments (# or ;),
/// [section] headers, or key = value. Every key must be consumed by a typed
/// getter; leftovers are reported with their line numbers.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::istream& in, const std::string& filename);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& def);
  bool get_bool(const std::string& key, bool def);
  int get_int(const std::string& key, int def);
  std::uint64_t get_u64(const std::string& key, std::uint64_t def);
  double get_double(const std::string& key, double def);
  std::vector<double> get_list(const std::string& key,
                               const std::vector<double>& def);
  /// Throws ConfigError naming the first unconsumed key.
  void finish() const;
  /// Rejects a semantically invalid value, pointing at the key's line.
  [[noreturn]] void reject(const std::string& key,
                           const std::string& msg) const;
  const std::string& filename() const { return filename_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    mutable bool used = false;
  };
  [[noreturn]] void fail(const std::string& key, const std::string& msg) const;
  std::string filename_;
  std::map<std::string, Entry> entries_;
};

/// Declarative form of a scalar or pair exponent field.
struct ExponentSpec {
  std::string kind = "constant"; // constant | affine | table | example | trace
  double value = 2.0;            // constant
  double base = 2.0;             // affine / affine_trace
  Vec2 slope = Vec2::Zero();
  double p0 = 2.0;               // example
  double radius = 3.0;
  std::vector<double> breaks;    // table
  std::vector<double> values;
};

struct FunctionSpec {
  std::string kind = "linear"; // linear | constant | sine | bump | random
  double value = 1.0;          // constant value or amplitude
  int mode = 1;                // sine mode
  int terms = 3;               // random series terms
  bool pinned = false;
};

struct ExperimentConfig {
  BoxDomain domain = BoxDomain::interval(0.0, 1.0);
  int nodes_x = 33;
  int nodes_y = 0;

  double s = 0.4;
  ExponentSpec p_spec, q_spec, r_spec;

  PairQuadratureOptions quad;
  int local_refine = 2;
  double bisect_tol = 1e-10;
  double assert_tol = 1e-8;
  double equivalence_slack = 1e-6;

  std::string nl_kind = "prototype"; // zero | prototype
  double lambda = 1.2;

  double t2 = 0.12;
  std::string beta_mode = "auto"; // auto | fixed
  double beta_value = 0.0;
  double c_imb = 1.0; // imbedding constant used by the auto beta policy

  SolveOptions solve;
  int starts = 8;
  double start_amplitude = 0.5;

  int dg_n_max = 30;
  std::string kstar_mode = "auto"; // auto | fixed
  double kstar_value = 1.0;
  double dg_d1 = 1.0;
  double dg_d2 = 1.0;

  int suite_norm_checks = 20;
  int suite_pairs = 20;
  int subspace_n = 2;
  int scaled_solutions = 5;
  int log_holder_samples = 128;
  std::vector<double> epsilons{0.05, 0.1, 0.2};

  FunctionSpec function;

  std::string out_dir = "out";
  std::uint64_t seed = 1;
  int threads = 1;
  bool verbose = false;

  static ExperimentConfig from_stream(std::istream& in,
                                      const std::string& filename);
  static ExperimentConfig load(const std::string& path);

  Grid make_grid() const;
  PairExponent make_p() const;
  ScalarExponent make_q() const;
  ScalarExponent make_r() const;
  Nonlinearity make_nonlinearity() const;
  GridFunction make_function(const Grid& grid) const;
};

} // namespace pxlap

#endif
