// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>

#include "igasipg/harness.hpp"

namespace iga {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the verification criteria (spectral equivalence, consistency,
/// convergence rates, robustness, patch test, projector identities, oracle
/// equivalence), printing one pass/fail line per criterion. `filter` selects
/// criteria by number or name substring; empty runs all.
std::vector<CriterionResult> run_acceptance(std::ostream& out,
                                            const std::string& filter = {});

}  // namespace iga
