// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver. Talks to the library exclusively through the C API in
// igasipg.h.

#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "igasipg.h"

namespace {

int fail(const char* context) {
  std::fprintf(stderr, "error (%s): %s\n", context, iga_last_error());
  return 1;
}

int run_study_command(const std::string& config_path, bool quiet) {
  iga_study* study = nullptr;
  if (iga_study_create_from_file(config_path.c_str(), &study) != IGA_OK)
    return fail("loading config");
  iga_study_result* result = nullptr;
  const iga_status status = iga_study_run(study, &result);
  if (status != IGA_OK) {
    iga_study_destroy(study);
    return fail("running study");
  }
  if (!quiet) {
    const char* csv = nullptr;
    iga_study_result_csv(result, &csv);
    std::fputs(csv, stdout);
  }
  iga_study_result_destroy(result);
  iga_study_destroy(study);
  return 0;
}

int run_export_command(const std::string& config_path,
                       const std::string& out_path) {
  iga_study* study = nullptr;
  if (iga_study_create_from_file(config_path.c_str(), &study) != IGA_OK)
    return fail("loading config");
  const iga_status status = iga_export_matrix(study, out_path.c_str());
  iga_study_destroy(study);
  if (status != IGA_OK) return fail("exporting matrix");
  return 0;
}

int run_verify_command(const std::string& filter) {
  int failed = 0;
  if (iga_verify(filter.empty() ? nullptr : filter.c_str(), &failed) != IGA_OK)
    return fail("running verification");
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multipatch isogeometric SIPG solver for the Poisson problem"};
  app.set_version_flag("--version", std::string(iga_version()));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::string filter;
  bool quiet = false;

  CLI::App* study = app.add_subcommand(
      "study", "Run a refinement/degree study from a config file");
  study->add_option("--config", config_path, "Study configuration (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  study->add_flag("--quiet", quiet, "Do not print the CSV to stdout");

  CLI::App* verify = app.add_subcommand(
      "verify", "Run the property/acceptance verification suite");
  verify->add_option("--only", filter,
                     "Criterion number or name substring to run");

  CLI::App* export_matrix = app.add_subcommand(
      "export-matrix", "Assemble A_h and write it in triplet text form");
  export_matrix
      ->add_option("--config", config_path, "Study configuration (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  export_matrix->add_option("--out", out_path, "Output path")->required();

  CLI11_PARSE(app, argc, argv);

  if (study->parsed()) return run_study_command(config_path, quiet);
  if (verify->parsed()) return run_verify_command(filter);
  if (export_matrix->parsed()) return run_export_command(config_path, out_path);
  return 0;
}
