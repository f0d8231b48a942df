// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: runs every verification criterion at its stated
// tolerance and prints one pass/fail line per criterion.

#include <iostream>
#include <string>

#include "igasipg/verify.hpp"

int main(int argc, char** argv) {
  const std::string filter = argc > 1 ? argv[1] : "";
  const std::vector<iga::CriterionResult> results =
      iga::run_acceptance(std::cout, filter);
  int failed = 0;
  for (const iga::CriterionResult& result : results)
    if (!result.passed) ++failed;
  return failed == 0 ? 0 : 1;
}
