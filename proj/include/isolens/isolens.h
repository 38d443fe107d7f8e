#ifndef ISOLENS_ISOLENS_H
#define ISOLENS_ISOLENS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ISOLENS_API __declspec(dllexport)
#else
#define ISOLENS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every fallible call returns a status; on failure the thread-local message
 * from isolens_last_error() describes it. */
typedef enum isolens_status {
  ISOLENS_OK = 0,
  ISOLENS_E_INVALID_PARAM = 1,
  ISOLENS_E_POLE = 2,
  ISOLENS_E_ON_CURVE = 3,
  ISOLENS_E_BOUNDARY_CASE = 4,
  ISOLENS_E_IO = 5,
  ISOLENS_E_NULL_ARGUMENT = 6,
  ISOLENS_E_INTERNAL = 7
} isolens_status;

typedef enum isolens_orientation {
  ISOLENS_PRESERVING = 0,
  ISOLENS_REVERSING = 1,
  ISOLENS_DEGENERATE = 2
} isolens_orientation;

typedef struct isolens_complex {
  double re;
  double im;
} isolens_complex;

typedef struct isolens_window {
  double re_min;
  double re_max;
  double im_min;
  double im_max;
} isolens_window;

typedef struct isolens_solution {
  isolens_complex z;
  isolens_orientation orientation;
  double residual;
  double jacobian;
} isolens_solution;

typedef struct isolens_solve_options {
  int seed_cols;
  int seed_rows;
  int max_iter;
  uint64_t rng_seed;
  int reseed_budget;
} isolens_solve_options;

/* Optional integers use has_* flags. */
typedef struct isolens_region {
  isolens_complex w;
  int on_curve;
  double curve_distance;
  int has_prediction;
  int idx_minus;
  int idx_plus;
  int m_predicted;
  int n_predicted;
  int has_solver;
  int m_solver;
  int n_solver;
  int degenerate_solver;
  int consistent;
} isolens_region;

typedef struct isolens_calibration {
  double k;
  isolens_complex w;
  int idx_minus;
  int m_solver;
  int sign;
  int frozen_sign;
} isolens_calibration;

/* Provenance echoed into emitted files: the command name and a JSON object
 * of inputs. Either may be NULL. */
typedef struct isolens_provenance {
  const char* command;
  const char* inputs_json;
} isolens_provenance;

typedef struct isolens_lens isolens_lens;
typedef struct isolens_solve_result isolens_solve_result;
typedef struct isolens_sweep isolens_sweep;
typedef struct isolens_basins isolens_basins;

typedef void (*isolens_acceptance_callback)(void* user, int id, int passed, const char* line);

ISOLENS_API const char* isolens_version(void);
ISOLENS_API const char* isolens_last_error(void);
ISOLENS_API const char* isolens_status_name(isolens_status status);
/* Releases strings and buffers returned through char** / uint8_t** outputs. */
ISOLENS_API void isolens_free(void* p);

ISOLENS_API isolens_status isolens_parse_complex(const char* text, isolens_complex* out);
/* Round-trip formatting "a+bi"; caller frees. */
ISOLENS_API isolens_status isolens_format_complex(isolens_complex z, char** out);

/* Lens parameters: k > 0, shear alpha with |alpha| != 1 (0 for none). */
ISOLENS_API isolens_status isolens_lens_create(double k, isolens_complex alpha, isolens_lens** out);
ISOLENS_API void isolens_lens_destroy(isolens_lens* lens);
ISOLENS_API isolens_status isolens_eval(const isolens_lens* lens, isolens_complex z, isolens_complex* value,
                                        double* jacobian);

ISOLENS_API void isolens_solve_options_default(isolens_solve_options* out);
/* options may be NULL for defaults. With check_oracle != 0 the oracle at
 * oracle_density is run as well and its agreement recorded. */
ISOLENS_API isolens_status isolens_solve(const isolens_lens* lens, isolens_complex w,
                                         const isolens_solve_options* options, int check_oracle, int oracle_density,
                                         isolens_solve_result** out);
ISOLENS_API isolens_status isolens_oracle(const isolens_lens* lens, isolens_complex w, int density,
                                          isolens_solve_result** out);
ISOLENS_API size_t isolens_solve_result_count(const isolens_solve_result* result);
ISOLENS_API isolens_status isolens_solve_result_get(const isolens_solve_result* result, size_t index,
                                                    isolens_solution* out);
/* 1 when a bound of the counting theorem was violated (alpha = 0 only). */
ISOLENS_API int isolens_solve_result_bound_violation(const isolens_solve_result* result);
/* -1 when the oracle was not run, else 0 or 1. */
ISOLENS_API int isolens_solve_result_oracle_agreement(const isolens_solve_result* result);
ISOLENS_API isolens_status isolens_solve_result_json(const isolens_solve_result* result,
                                                     const isolens_provenance* provenance, char** out);
ISOLENS_API void isolens_solve_result_destroy(isolens_solve_result* result);
/* Parses the solutions array of a solve report back into records. */
ISOLENS_API isolens_status isolens_solutions_from_json(const char* json, isolens_solution** out, size_t* count);

ISOLENS_API isolens_status isolens_cusps_json(const isolens_lens* lens, const isolens_provenance* provenance,
                                              char** out);
ISOLENS_API isolens_status isolens_cusp_count(const isolens_lens* lens, size_t* out);
ISOLENS_API isolens_status isolens_critical_csv(const isolens_lens* lens, int samples_per_arc,
                                                const isolens_provenance* provenance, char** out);
ISOLENS_API isolens_status isolens_caustic_csv(const isolens_lens* lens, int samples_per_arc,
                                               const isolens_provenance* provenance, char** out);
ISOLENS_API isolens_status isolens_caustic_svg(const isolens_lens* lens, int samples_per_arc, isolens_window view,
                                               const isolens_provenance* provenance, char** out);

ISOLENS_API isolens_status isolens_index_dminus(const isolens_lens* lens, isolens_complex w, int* out);
ISOLENS_API isolens_status isolens_index_dplus(const isolens_lens* lens, isolens_complex w, double clip, int* out);
ISOLENS_API isolens_status isolens_calibrate(isolens_calibration* out);
/* with_solver = 0 gives the index prediction only. */
ISOLENS_API isolens_status isolens_classify(const isolens_lens* lens, isolens_complex w, int with_solver,
                                            const isolens_solve_options* options, isolens_region* out);
ISOLENS_API isolens_status isolens_region_json(const isolens_region* region, const isolens_provenance* provenance,
                                               char** out);

ISOLENS_API isolens_status isolens_sweep_run(const isolens_lens* lens, isolens_window window, int resolution,
                                             int threads, uint64_t seed, isolens_sweep** out);
ISOLENS_API int isolens_sweep_resolution(const isolens_sweep* sweep);
/* m and n are -1 for on-curve cells. Row j = 0 is the bottom of the window. */
ISOLENS_API isolens_status isolens_sweep_cell(const isolens_sweep* sweep, int i, int j, isolens_complex* w, int* m,
                                              int* n, int* on_curve);
ISOLENS_API int isolens_sweep_spot_checks_consistent(const isolens_sweep* sweep);
ISOLENS_API isolens_status isolens_sweep_spot_checks_json(const isolens_sweep* sweep, char** out);
ISOLENS_API isolens_status isolens_sweep_csv(const isolens_sweep* sweep, const isolens_provenance* provenance,
                                             char** out);
ISOLENS_API isolens_status isolens_sweep_svg(const isolens_sweep* sweep, const isolens_provenance* provenance,
                                             char** out);
ISOLENS_API void isolens_sweep_destroy(isolens_sweep* sweep);

ISOLENS_API isolens_status isolens_basins_render(const isolens_lens* lens, isolens_complex w, isolens_window viewport,
                                                 int width, int height, int max_iter, int threads,
                                                 isolens_basins** out);
ISOLENS_API double isolens_basins_resolved_fraction(const isolens_basins* basins);
ISOLENS_API size_t isolens_basins_attractor_count(const isolens_basins* basins);
ISOLENS_API isolens_status isolens_basins_attractor(const isolens_basins* basins, size_t index, isolens_complex* out);
/* Attractor index of pixel (x, y), or -1 when unresolved. */
ISOLENS_API int isolens_basins_label(const isolens_basins* basins, int x, int y);
ISOLENS_API isolens_status isolens_basins_ppm(const isolens_basins* basins, uint8_t** data, size_t* size);
ISOLENS_API void isolens_basins_destroy(isolens_basins* basins);

/* Single attracted orbit: attractor index or -1. */
ISOLENS_API isolens_status isolens_iterate_map(const isolens_basins* basins, const isolens_lens* lens,
                                               isolens_complex w, isolens_complex z0, int max_iter, int* out);

ISOLENS_API isolens_status isolens_write_file(const char* path, const void* data, size_t size);

/* Runs the listed acceptance criteria (ids 1..10; NULL/0 for all), calling
 * back with one formatted line per criterion. */
ISOLENS_API isolens_status isolens_acceptance_run(const int* ids, size_t count, int threads, uint64_t seed,
                                                  isolens_acceptance_callback callback, void* user,
                                                  int* all_passed);

#ifdef __cplusplus
}
#endif

#endif
