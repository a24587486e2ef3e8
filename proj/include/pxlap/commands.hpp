// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_COMMANDS_HPP
#define PXLAP_COMMANDS_HPP

#include <string>

#include "pxlap/config.hpp"

namespace pxlap {

/// Shared exit-code contract of all commands.
enum ExitCode {
  exit_ok = 0,
  exit_config = 1,
  exit_assertion = 2,
  exit_nonconvergence = 3,
};

/// Norm reports (Lebesgue, Gagliardo, combined) for the configured function.
int cmd_norm(const ExperimentConfig& cfg);
/// Energy minimization of the configured problem; writes solution CSV,
/// history CSV, and the report JSON.
int cmd_solve(const ExperimentConfig& cfg);
/// Level trace of a stored solution against the configured exponents.
int cmd_degiorgi(const ExperimentConfig& cfg, const std::string& solution_csv);
/// Full pipeline: norm checks, solve + multistart, subspace check, level
/// traces, sup-bound fit; one summary JSON with per-stage verdicts.
int cmd_suite(const ExperimentConfig& cfg);

} // namespace pxlap

#endif
