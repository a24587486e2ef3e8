// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_JSONIO_HPP
#define PXLAP_JSONIO_HPP

#include <string>
#include <vector>

#include "json.hpp"

#include "pxlap/checks.hpp"
#include "pxlap/degiorgi.hpp"
#include "pxlap/exponents.hpp"
#include "pxlap/modular.hpp"
#include "pxlap/nonlocal.hpp"
#include "pxlap/solver.hpp"

namespace pxlap {

using ordered_json = nlohmann::ordered_json;

ordered_json json_of(const std::vector<CheckItem>& checks);
ordered_json json_of(const ModularReport& r);
ordered_json json_of(const RelationReport& r);
ordered_json json_of(const PairingReport& r);
ordered_json json_of(const ComparisonReport& r);
ordered_json json_of(const SeminormReport& r);
ordered_json json_of(const LogHolderReport& r);
ordered_json json_of(const SolveReport& r, const std::string& solution_csv);
ordered_json json_of(const DeGiorgiTrace& t);
ordered_json json_of(const RecursionTrace& t);
ordered_json json_of(const LinfFitReport& r);
ordered_json json_of(const SubspaceReport& r);
ordered_json json_of(const ImbeddingReport& r);

/// Writes with a fixed 2-space indentation and trailing newline so repeated
/// runs are byte-identical.
void write_json_file(const std::string& path, const ordered_json& j);
void write_text_file(const std::string& path, const std::string& text);

/// Minimal structural validator for the shipped schemas. Supports: type,
/// properties, required, items, enum, minimum, additionalProperties=false.
/// Returns one message per violation; empty means valid.
std::vector<std::string> validate_schema(const ordered_json& schema,
                                         const ordered_json& value,
                                         const std::string& where = "$");

} // namespace pxlap

#endif
