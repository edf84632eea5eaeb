// SPDX-License-Identifier: Apache-2.0
//
// lifisim: frequency-domain multi-link LiFi channel simulator
// Copyright (C) 2026 lifisim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


/*
 * C interface of the lifisim channel simulator.
 *
 * All objects are opaque handles owned by the caller and released with the matching *_free
 * function. Every call that can fail returns a lifi_status; on failure a description is available
 * from lifi_last_error() on the calling thread until the next failing call on that thread.
 *
 * Complex responses are exchanged as separate real/imaginary arrays of length
 * lifi_model_frequency_count().
 */

#ifndef LIFI_H
#define LIFI_H

#include <stddef.h>

#if defined(_WIN32)
#define LIFI_API __declspec(dllexport)
#else
#define LIFI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum lifi_status
{
    LIFI_OK = 0,
    LIFI_ERR_INVALID_ARGUMENT = 1,
    LIFI_ERR_INVALID_RESOLUTION = 2,
    LIFI_ERR_DEGENERATE_GEOMETRY = 3,
    LIFI_ERR_DIVERGENT_CAVITY = 4,
    LIFI_ERR_SCENE_MISMATCH = 5,
    LIFI_ERR_GRID_MISMATCH = 6,
    LIFI_ERR_UNDEFINED_REFERENCE = 7,
    LIFI_ERR_CAPACITY = 8,
    LIFI_ERR_PARSE = 9,
    LIFI_ERR_IO = 10,
    LIFI_ERR_INTERNAL = 11
} lifi_status;

typedef enum lifi_component
{
    LIFI_COMPONENT_LOS = 0,
    LIFI_COMPONENT_DIFF2 = 1,
    LIFI_COMPONENT_TAIL = 2,
    LIFI_COMPONENT_TOTAL = 3
} lifi_component;

typedef enum lifi_db_convention
{
    LIFI_DB_20LOG = 0,
    LIFI_DB_10LOG = 1
} lifi_db_convention;

typedef enum lifi_mse_mode
{
    LIFI_MSE_COMPLEX = 0,
    LIFI_MSE_AMPLITUDE = 1
} lifi_mse_mode;

typedef enum lifi_window
{
    LIFI_WINDOW_RECTANGULAR = 0,
    LIFI_WINDOW_HANN = 1
} lifi_window;

typedef struct lifi_scenario lifi_scenario; /* parsed scenario file: scene + simulation settings */
typedef struct lifi_model lifi_model;       /* scene-level cache: patches, intrinsic operator, source fields */
typedef struct lifi_channel lifi_channel;   /* detectors x emitters transfer functions */
typedef struct lifi_trace lifi_trace;       /* mobility sweep of one detector */
typedef struct lifi_heatmap lifi_heatmap;   /* received DC power over a horizontal plane */

/* Simulation settings. Fields mirror the scenario file's "simulation" section plus runtime knobs. */
typedef struct lifi_options
{
    double dx_m;
    double f_min_hz;
    double f_max_hz;
    double f_step_hz;
    int explicit_frequency_list; /* read-only: 1 if the scenario lists frequencies explicitly */
    int bounces;
    int tail;
    int tail_delay_offset;
    int has_rho1;
    double rho1;
    double query_frequency_hz;
    lifi_db_convention db_convention;
    lifi_mse_mode mse_mode;
    unsigned threads;
    size_t memory_budget_bytes;
} lifi_options;

typedef struct lifi_pose
{
    double position[3];
    double orientation[3];
} lifi_pose;

typedef struct lifi_device_info
{
    char id[64];
    double position[3];
    double orientation[3];
} lifi_device_info;

LIFI_API const char *lifi_version(void);
LIFI_API const char *lifi_last_error(void);
LIFI_API const char *lifi_status_string(lifi_status status);

/* ---- scenarios ---------------------------------------------------------------------------- */

LIFI_API lifi_status lifi_scenario_load(const char *path, lifi_scenario **out);
LIFI_API lifi_status lifi_scenario_parse(const char *text, size_t length, lifi_scenario **out);
LIFI_API void lifi_scenario_free(lifi_scenario *scenario);

/* Writes the canonical JSON form. *needed receives the size including the terminating NUL; pass
 * buffer = NULL to query it. */
LIFI_API lifi_status lifi_scenario_serialize(const lifi_scenario *scenario, char *buffer, size_t capacity,
                                             size_t *needed);

LIFI_API lifi_status lifi_scenario_get_options(const lifi_scenario *scenario, lifi_options *out);
/* Replaces the range grid when f_step_hz > 0 (an explicit list is kept if f_step_hz <= 0). */
LIFI_API lifi_status lifi_scenario_set_options(lifi_scenario *scenario, const lifi_options *options);

LIFI_API size_t lifi_scenario_emitter_count(const lifi_scenario *scenario);
LIFI_API size_t lifi_scenario_detector_count(const lifi_scenario *scenario);
LIFI_API lifi_status lifi_scenario_emitter_info(const lifi_scenario *scenario, size_t index, lifi_device_info *out);
LIFI_API lifi_status lifi_scenario_detector_info(const lifi_scenario *scenario, size_t index, lifi_device_info *out);
LIFI_API lifi_status lifi_scenario_set_detector_pose(lifi_scenario *scenario, size_t index, const lifi_pose *pose);

/* Room geometry: {length_x, width_y, height_z} in m. */
LIFI_API lifi_status lifi_scenario_room(const lifi_scenario *scenario, double dims[3]);

/* Patch count the scenario's resolution produces, and the matching time resolution dx / c. */
LIFI_API lifi_status lifi_scenario_patch_count(const lifi_scenario *scenario, size_t *count);
LIFI_API double lifi_effective_time_resolution(double dx_m);

/* ---- model and evaluation ------------------------------------------------------------------ */

LIFI_API lifi_status lifi_model_build(const lifi_scenario *scenario, lifi_model **out);
LIFI_API void lifi_model_free(lifi_model *model);
LIFI_API size_t lifi_model_patch_count(const lifi_model *model);
LIFI_API size_t lifi_model_frequency_count(const lifi_model *model);
LIFI_API lifi_status lifi_model_frequencies(const lifi_model *model, double *out, size_t n);
LIFI_API double lifi_model_build_seconds(const lifi_model *model);
LIFI_API double lifi_model_mean_reflectivity(const lifi_model *model);
/* Integrating-sphere parameters for emitter tx seen by detector rx: DC gain and decay time. */
LIFI_API lifi_status lifi_model_tail_params(const lifi_model *model, size_t rx, size_t tx, double *eta,
                                            double *decay_s);

LIFI_API lifi_status lifi_model_evaluate(const lifi_model *model, lifi_channel **out);
LIFI_API void lifi_channel_free(lifi_channel *channel);
LIFI_API size_t lifi_channel_detector_count(const lifi_channel *channel);
LIFI_API size_t lifi_channel_emitter_count(const lifi_channel *channel);
LIFI_API lifi_status lifi_channel_response(const lifi_channel *channel, size_t rx, size_t tx, lifi_component component,
                                           double *re, double *im, size_t n);
LIFI_API lifi_status lifi_channel_gain_db(const lifi_channel *channel, size_t rx, size_t tx, double f_hz,
                                          lifi_db_convention convention, double *out);

/* Moves detector `detector` through the poses, reusing all scene-level caches. */
LIFI_API lifi_status lifi_model_sweep(const lifi_model *model, size_t detector, const lifi_pose *poses,
                                      size_t pose_count, lifi_trace **out);
LIFI_API void lifi_trace_free(lifi_trace *trace);
LIFI_API size_t lifi_trace_pose_count(const lifi_trace *trace);
LIFI_API size_t lifi_trace_emitter_count(const lifi_trace *trace);
LIFI_API lifi_status lifi_trace_response(const lifi_trace *trace, size_t pose, size_t tx, lifi_component component,
                                         double *re, double *im, size_t n);
LIFI_API lifi_status lifi_trace_distance(const lifi_trace *trace, size_t pose, size_t tx, double *out);
LIFI_API lifi_status lifi_trace_gain_db(const lifi_trace *trace, size_t pose, size_t tx, double f_hz,
                                        lifi_db_convention convention, double *out);
LIFI_API lifi_status lifi_trace_timing(const lifi_trace *trace, double *setup_seconds, double *mean_pose_seconds);

/* ---- metrics -------------------------------------------------------------------------------- */

LIFI_API lifi_status lifi_relative_mse(const double *meas_re, const double *meas_im, const double *sim_re,
                                       const double *sim_im, size_t n, lifi_mse_mode mode, double *percent);

/* Uniform grid starting at 0 Hz with n samples of spacing f_step_hz. taps must hold 2 (n - 1) values. */
LIFI_API lifi_status lifi_impulse_response(const double *re, const double *im, size_t n, double f_step_hz,
                                           lifi_window window, double *taps, size_t tap_capacity, double *dt_s);

LIFI_API lifi_status lifi_heatmap_build(const lifi_scenario *scenario, size_t detector_template, double x_step_m,
                                        double y_step_m, double height_m, lifi_heatmap **out);
LIFI_API void lifi_heatmap_free(lifi_heatmap *map);
LIFI_API lifi_status lifi_heatmap_dims(const lifi_heatmap *map, size_t *nx, size_t *ny);
LIFI_API lifi_status lifi_heatmap_axes(const lifi_heatmap *map, double *x, double *y);
/* values[iy * nx + ix], watts */
LIFI_API lifi_status lifi_heatmap_values(const lifi_heatmap *map, double *values);

/* Compares the patch-model diffuse response against explicit path enumeration for every link of
 * the scenario, after coarsening the resolution until the patch count is at most max_patches.
 * drop_second_bounce evaluates the patch model with one bounce only (fault injection). */
LIFI_API lifi_status lifi_oracle_check(const lifi_scenario *scenario, size_t max_patches, int drop_second_bounce,
                                       double *max_relative_deviation, size_t *patch_count, double *dx_used);

#ifdef __cplusplus
}
#endif

#endif
