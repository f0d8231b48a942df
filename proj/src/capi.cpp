// Copyright (c) 2026 iga-sipg contributors
// SPDX-License-Identifier: Apache-2.0

#include "igasipg.h"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "igasipg/verify.hpp"

struct iga_study {
  iga::StudyConfig config;
};

struct iga_study_result {
  std::vector<iga::StudyRow> rows;
  std::string csv;
};

namespace {

thread_local std::string last_error_message;

iga_status to_status(const std::exception& e) {
  last_error_message = e.what();
  if (dynamic_cast<const iga::ConfigError*>(&e)) return IGA_ERR_CONFIG;
  if (dynamic_cast<const iga::IoError*>(&e)) return IGA_ERR_IO;
  if (dynamic_cast<const iga::GeometryError*>(&e)) return IGA_ERR_GEOMETRY;
  if (dynamic_cast<const iga::TopologyError*>(&e)) return IGA_ERR_TOPOLOGY;
  if (dynamic_cast<const iga::SolverError*>(&e)) return IGA_ERR_SOLVER;
  if (dynamic_cast<const iga::DomainError*>(&e)) return IGA_ERR_INVALID_ARGUMENT;
  return IGA_ERR_INTERNAL;
}

template <class Fn>
iga_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return to_status(e);
  } catch (...) {
    last_error_message = "unknown error";
    return IGA_ERR_INTERNAL;
  }
}

iga_status invalid_argument(const char* message) {
  last_error_message = message;
  return IGA_ERR_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* iga_version(void) { return "0.1.0"; }

const char* iga_last_error(void) { return last_error_message.c_str(); }

iga_status iga_study_create_from_file(const char* path,
                                      iga_study** out_study) {
  if (!path || !out_study) return invalid_argument("null argument");
  return guarded([&] {
    auto study = std::make_unique<iga_study>();
    study->config = iga::load_study_config(path);
    *out_study = study.release();
    return IGA_OK;
  });
}

iga_status iga_study_create_from_json(const char* json_text,
                                      iga_study** out_study) {
  if (!json_text || !out_study) return invalid_argument("null argument");
  return guarded([&] {
    auto study = std::make_unique<iga_study>();
    study->config = iga::parse_study_config(json_text);
    *out_study = study.release();
    return IGA_OK;
  });
}

void iga_study_destroy(iga_study* study) { delete study; }

iga_status iga_study_run(iga_study* study, iga_study_result** out_result) {
  if (!study || !out_result) return invalid_argument("null argument");
  return guarded([&] {
    auto result = std::make_unique<iga_study_result>();
    std::ostringstream log;
    result->rows = iga::run_study(study->config, &log);
    result->csv = iga::csv_string(result->rows);
    if (!log.str().empty()) std::cerr << log.str();
    *out_result = result.release();
    return IGA_OK;
  });
}

size_t iga_study_result_rows(const iga_study_result* result) {
  return result ? result->rows.size() : 0;
}

iga_status iga_study_result_row(const iga_study_result* result, size_t index,
                                int* level, int* degree, long long* dofs,
                                double* error, double* rate, double* seconds) {
  if (!result) return invalid_argument("null result");
  if (index >= result->rows.size()) return invalid_argument("row out of range");
  const iga::StudyRow& row = result->rows[index];
  if (level) *level = row.level;
  if (degree) *degree = row.p;
  if (dofs) *dofs = static_cast<long long>(row.n_dofs);
  if (error) *error = row.error;
  if (rate) *rate = row.rate ? *row.rate : std::nan("");
  if (seconds) *seconds = row.seconds;
  return IGA_OK;
}

iga_status iga_study_result_csv(const iga_study_result* result,
                                const char** out_text) {
  if (!result || !out_text) return invalid_argument("null argument");
  *out_text = result->csv.c_str();
  return IGA_OK;
}

void iga_study_result_destroy(iga_study_result* result) { delete result; }

iga_status iga_export_matrix(iga_study* study, const char* out_path) {
  if (!study || !out_path) return invalid_argument("null argument");
  return guarded([&] {
    std::ofstream out(out_path);
    if (!out) throw iga::IoError(std::string("cannot write '") + out_path + "'");
    iga::export_system_matrix(study->config, out);
    return IGA_OK;
  });
}

iga_status iga_verify(const char* filter, int* out_failed) {
  return guarded([&] {
    const std::vector<iga::CriterionResult> results =
        iga::run_acceptance(std::cout, filter ? filter : "");
    int failed = 0;
    for (const iga::CriterionResult& r : results)
      if (!r.passed) ++failed;
    if (out_failed) *out_failed = failed;
    return IGA_OK;
  });
}

}  // extern "C"
