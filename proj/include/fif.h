// Copyright 2026 The fif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FIF_H_
#define FIF_H_

/* C interface to the fif library: affine fractal interpolation functions
 * whose pieces may overlap.
 *
 * Every function returns a status code. Output strings are allocated by the
 * library and released with fif_string_free. On failure fif_last_error()
 * describes the problem (per thread, valid until the next call).
 *
 * Scalars are passed as strings: "3", "-7/15" are exact, "0.2", "1e-3" are
 * floating. Reports are JSON documents. */

#include <stddef.h>

#if defined(_WIN32)
#define FIF_API __declspec(dllexport)
#else
#define FIF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fif_status {
  FIF_OK = 0,
  FIF_E_PARSE = 1,
  FIF_E_SINGULAR_MAP = 2,
  FIF_E_INDEX_OUT_OF_RANGE = 3,
  FIF_E_NOT_CONTRACTIVE = 4,
  FIF_E_NOT_COVERING = 5,
  FIF_E_NOT_A_FUNCTION_GRAPH = 6,
  FIF_E_DEPTH_TOO_LARGE = 7, /* word or point budget exceeded */
  FIF_E_OUT_OF_DOMAIN = 8,
  FIF_E_RESOLUTION_INSUFFICIENT = 9,
  FIF_E_FIXED_POINT_INSIDE = 10,
  FIF_E_STEP_TOO_LARGE = 11,
  FIF_E_NONPOSITIVE_RATIO = 12,
  FIF_E_DEGENERATE_DENOMINATOR = 13,
  FIF_E_INVALID_ARGUMENT = 14,
  FIF_E_IO = 15,
  FIF_E_INTERNAL = 16
} fif_status;

typedef struct fif_system fif_system;

FIF_API const char* fif_version(void);
FIF_API const char* fif_status_name(fif_status status);
FIF_API const char* fif_last_error(void);
FIF_API void fif_string_free(char* s);

/* overrides: NULL or a NULL-terminated array of "name=value" strings that
 * replace parameters declared in the text. */
FIF_API fif_status fif_system_from_text(const char* text, const char* const* overrides, fif_system** out);
FIF_API fif_status fif_system_from_file(const char* path, const char* const* overrides, fif_system** out);
/* name: "overlap" (param = value of a, NULL for 1/5), "dyadic-parabola",
 * "mixed-parabola". */
FIF_API fif_status fif_system_example(const char* name, const char* param, fif_system** out);
FIF_API void fif_system_free(fif_system* sys);

FIF_API int fif_system_is_exact(const fif_system* sys);
FIF_API size_t fif_system_map_count(const fif_system* sys);
/* Canonical system file text. */
FIF_API fif_status fif_system_to_text(const fif_system* sys, char** out);

/* Returns the validation verdict (FIF_OK when valid); the report is filled
 * in either case. */
FIF_API fif_status fif_validate(const fif_system* sys, double tol, char** report);

/* f(x) to within tol. *exact receives "n/d" when the value is known exactly,
 * NULL otherwise; pass NULL to skip. */
FIF_API fif_status fif_evaluate(const fif_system* sys, const char* x, double tol, double* y, char** exact,
                                char** report);

/* Attractor sample of the given depth as CSV, optionally an SVG polyline.
 * max_points = 0 uses the default budget. svg may be NULL. */
FIF_API fif_status fif_render(const fif_system* sys, int depth, size_t max_points, char** csv, char** svg,
                              char** report);

/* Sorted sample as interleaved x, y doubles; release with fif_buffer_free. */
FIF_API fif_status fif_sample(const fif_system* sys, int depth, size_t max_points, double** xy, size_t* count);
FIF_API void fif_buffer_free(double* buf);

/* Separation check up to the given depth. mode: "1d", "2d" or "both".
 * word_budget = 0 uses the default. *witness_found is set to 1 when some
 * non-identity element lies within tol of the identity. */
FIF_API fif_status fif_wsp(const fif_system* sys, int depth, double tol, const char* mode, size_t word_budget,
                           int* witness_found, char** report);

/* Orbit of g = g_j^-1 g_i forming an eps-net of the graph. Words are
 * comma-separated 1-based map indices, e.g. "2,4". */
FIF_API fif_status fif_orbit(const fif_system* sys, const char* gi, const char* gj, double eps, char** csv,
                             char** report);

/* Curve carrying the orbit of (x0, y0) under (x, y) -> (p x + h, q y + r x + s)
 * on [a, b], with the residual of the orbit against the curve. */
FIF_API fif_status fif_classify(const char* p, const char* q, const char* r, const char* h, const char* s,
                                const char* x0, const char* y0, const char* a, const char* b, char** report);

/* The "overlap" example with the given a (NULL for 1/5) drawn as SVG. */
FIF_API fif_status fif_example_figure1(const char* param, int depth, char** svg, char** report);

#ifdef __cplusplus
}
#endif

#endif /* FIF_H_ */
