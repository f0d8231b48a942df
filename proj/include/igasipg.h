/* Copyright (c) 2026 iga-sipg contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the iga-sipg library: opaque handles plus status codes.
 * All functions returning iga_status leave an explanatory message in
 * iga_last_error() on failure. Handles are freed with the matching
 * *_destroy call; destroy functions accept NULL.
 */

#ifndef IGASIPG_H
#define IGASIPG_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum iga_status {
  IGA_OK = 0,
  IGA_ERR_INVALID_ARGUMENT = 1,
  IGA_ERR_CONFIG = 2,
  IGA_ERR_IO = 3,
  IGA_ERR_GEOMETRY = 4,
  IGA_ERR_TOPOLOGY = 5,
  IGA_ERR_SOLVER = 6,
  IGA_ERR_INTERNAL = 7
} iga_status;

/* A loaded study configuration. */
typedef struct iga_study iga_study;
/* The result table of a finished study. */
typedef struct iga_study_result iga_study_result;

const char* iga_version(void);

/* Message describing the most recent failure on this thread. */
const char* iga_last_error(void);

iga_status iga_study_create_from_file(const char* path, iga_study** out_study);
iga_status iga_study_create_from_json(const char* json_text,
                                      iga_study** out_study);
void iga_study_destroy(iga_study* study);

/* Runs the full degree/level sweep. Writes the CSV configured in the study
 * (if any) and hands back the result table. */
iga_status iga_study_run(iga_study* study, iga_study_result** out_result);

size_t iga_study_result_rows(const iga_study_result* result);

/* Column values of one row; rate is NaN on the first level of a column.
 * Any output pointer may be NULL. */
iga_status iga_study_result_row(const iga_study_result* result, size_t index,
                                int* level, int* degree, long long* dofs,
                                double* error, double* rate, double* seconds);

/* The full table in CSV form; the pointer stays valid until the result is
 * destroyed. */
iga_status iga_study_result_csv(const iga_study_result* result,
                                const char** out_text);
void iga_study_result_destroy(iga_study_result* result);

/* Assembles the system matrix for the first degree / coarsest level of the
 * study and writes it in coordinate text form ("N nnz" header, then
 * "row col value" lines, 0-based, lower triangle). */
iga_status iga_export_matrix(iga_study* study, const char* out_path);

/* Runs the verification criteria, one pass/fail line each on stdout.
 * filter: NULL/empty for all, or a criterion number / name substring.
 * out_failed (may be NULL) receives the number of failed criteria. */
iga_status iga_verify(const char* filter, int* out_failed);

#ifdef __cplusplus
}
#endif

#endif /* IGASIPG_H */
