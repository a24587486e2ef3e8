// Copyright (c) 2026 the pxlap authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PXLAP_CHECKS_HPP
#define PXLAP_CHECKS_HPP

#include <string>
#include <vector>

namespace pxlap {

/// One recorded inequality or identity check: `lhs` and `rhs` are the two
/// sides as evaluated, `passed` is the verdict after tolerance handling.
struct CheckItem {
  std::string name;
  bool passed = false;
  double lhs = 0.0;
  double rhs = 0.0;
};

inline bool all_passed(const std::vector<CheckItem>& items) {
  for (const auto& c : items)
    if (!c.passed) return false;
  return true;
}

} // namespace pxlap

#endif
