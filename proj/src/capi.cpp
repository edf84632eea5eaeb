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


#include "lifi/lifi.h"

#include "lifi/assembler.hpp"
#include "lifi/error.hpp"
#include "lifi/oracle.hpp"
#include "lifi/scenario.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#ifndef LIFI_VERSION_STRING
#define LIFI_VERSION_STRING "0.0.0"
#endif

struct lifi_scenario
{
    lifi::Scenario value;
};

struct lifi_model
{
    lifi::ChannelModel value;
    lifi::Scenario scenario;
};

struct lifi_channel
{
    lifi::ChannelMatrix value;
};

struct lifi_trace
{
    lifi::MobilityTrace value;
};

struct lifi_heatmap
{
    lifi::Heatmap value;
};

namespace
{
    thread_local std::string last_error;

    lifi_status to_status(lifi::ErrorKind kind)
    {
        using lifi::ErrorKind;
        switch (kind)
        {
        case ErrorKind::invalid_argument:
            return LIFI_ERR_INVALID_ARGUMENT;
        case ErrorKind::invalid_resolution:
            return LIFI_ERR_INVALID_RESOLUTION;
        case ErrorKind::degenerate_geometry:
            return LIFI_ERR_DEGENERATE_GEOMETRY;
        case ErrorKind::divergent_cavity:
            return LIFI_ERR_DIVERGENT_CAVITY;
        case ErrorKind::scene_mismatch:
            return LIFI_ERR_SCENE_MISMATCH;
        case ErrorKind::grid_mismatch:
            return LIFI_ERR_GRID_MISMATCH;
        case ErrorKind::undefined_reference:
            return LIFI_ERR_UNDEFINED_REFERENCE;
        case ErrorKind::capacity:
            return LIFI_ERR_CAPACITY;
        case ErrorKind::parse:
            return LIFI_ERR_PARSE;
        case ErrorKind::io:
            return LIFI_ERR_IO;
        }
        return LIFI_ERR_INTERNAL;
    }

    lifi_status set_error(lifi_status status, std::string msg)
    {
        last_error = std::move(msg);
        return status;
    }

    // Runs fn, translating exceptions into status codes.
    template <class Fn>
    lifi_status guarded(Fn &&fn) noexcept
    {
        try
        {
            fn();
            return LIFI_OK;
        }
        catch (const lifi::Error &e)
        {
            return set_error(to_status(e.kind()), e.what());
        }
        catch (const std::out_of_range &e)
        {
            return set_error(LIFI_ERR_INVALID_ARGUMENT, e.what());
        }
        catch (const std::bad_alloc &)
        {
            return set_error(LIFI_ERR_CAPACITY, "out of memory");
        }
        catch (const std::exception &e)
        {
            return set_error(LIFI_ERR_INTERNAL, e.what());
        }
        catch (...)
        {
            return set_error(LIFI_ERR_INTERNAL, "unknown error");
        }
    }

    void require(bool cond, const char *what)
    {
        if (!cond)
            lifi::fail(lifi::ErrorKind::invalid_argument, what);
    }

    const lifi::ComplexSeries &pick(const lifi::TransferFunction &tf, lifi_component c)
    {
        require(c >= LIFI_COMPONENT_LOS && c <= LIFI_COMPONENT_TOTAL, "unknown component");
        return tf.component(static_cast<lifi::Component>(c));
    }

    void copy_series(const lifi::ComplexSeries &h, double *re, double *im, std::size_t n)
    {
        require(n == h.size(), "output length differs from the frequency count");
        for (std::size_t i = 0; i < n; ++i)
        {
            if (re)
                re[i] = h[i].real();
            if (im)
                im[i] = h[i].imag();
        }
    }

    lifi::DbConvention to_conv(lifi_db_convention c)
    {
        require(c == LIFI_DB_20LOG || c == LIFI_DB_10LOG, "unknown dB convention");
        return c == LIFI_DB_20LOG ? lifi::DbConvention::amplitude_20log : lifi::DbConvention::power_10log;
    }

    void fill_info(const std::string &id, lifi::Vec3 pos, lifi::Vec3 dir, lifi_device_info *out)
    {
        require(out != nullptr, "null output");
        std::memset(out, 0, sizeof(*out));
        std::strncpy(out->id, id.c_str(), sizeof(out->id) - 1);
        out->position[0] = pos.x;
        out->position[1] = pos.y;
        out->position[2] = pos.z;
        out->orientation[0] = dir.x;
        out->orientation[1] = dir.y;
        out->orientation[2] = dir.z;
    }

    lifi::Pose to_pose(const lifi_pose &p)
    {
        return {{p.position[0], p.position[1], p.position[2]}, {p.orientation[0], p.orientation[1], p.orientation[2]}};
    }
}

extern "C"
{
    const char *lifi_version(void) { return LIFI_VERSION_STRING; }

    const char *lifi_last_error(void) { return last_error.c_str(); }

    const char *lifi_status_string(lifi_status status)
    {
        switch (status)
        {
        case LIFI_OK:
            return "ok";
        case LIFI_ERR_INVALID_ARGUMENT:
            return "invalid argument";
        case LIFI_ERR_INVALID_RESOLUTION:
            return "invalid resolution";
        case LIFI_ERR_DEGENERATE_GEOMETRY:
            return "degenerate geometry";
        case LIFI_ERR_DIVERGENT_CAVITY:
            return "divergent cavity";
        case LIFI_ERR_SCENE_MISMATCH:
            return "scene mismatch";
        case LIFI_ERR_GRID_MISMATCH:
            return "grid mismatch";
        case LIFI_ERR_UNDEFINED_REFERENCE:
            return "undefined reference";
        case LIFI_ERR_CAPACITY:
            return "capacity exceeded";
        case LIFI_ERR_PARSE:
            return "parse error";
        case LIFI_ERR_IO:
            return "i/o error";
        case LIFI_ERR_INTERNAL:
            return "internal error";
        }
        return "unknown status";
    }

    lifi_status lifi_scenario_load(const char *path, lifi_scenario **out)
    {
        return guarded([&]
                       {
            require(path && out, "null argument");
            *out = new lifi_scenario{lifi::load_scenario(path)}; });
    }

    lifi_status lifi_scenario_parse(const char *text, size_t length, lifi_scenario **out)
    {
        return guarded([&]
                       {
            require(text && out, "null argument");
            *out = new lifi_scenario{lifi::parse_scenario(std::string_view(text, length))}; });
    }

    void lifi_scenario_free(lifi_scenario *scenario) { delete scenario; }

    lifi_status lifi_scenario_serialize(const lifi_scenario *scenario, char *buffer, size_t capacity, size_t *needed)
    {
        return guarded([&]
                       {
            require(scenario != nullptr, "null scenario");
            const std::string text = lifi::serialize_scenario(scenario->value);
            if (needed)
                *needed = text.size() + 1;
            if (!buffer)
                return;
            if (capacity < text.size() + 1)
                lifi::fail(lifi::ErrorKind::capacity, "buffer too small");
            std::memcpy(buffer, text.c_str(), text.size() + 1); });
    }

    lifi_status lifi_scenario_get_options(const lifi_scenario *scenario, lifi_options *out)
    {
        return guarded([&]
                       {
            require(scenario && out, "null argument");
            const auto &s = scenario->value;
            *out = lifi_options{};
            out->dx_m = s.options.dx;
            out->f_min_hz = s.frequency.f_min;
            out->f_max_hz = s.frequency.f_max;
            out->f_step_hz = s.frequency.step;
            out->explicit_frequency_list = s.frequency.explicit_list ? 1 : 0;
            if (s.frequency.explicit_list)
            {
                out->f_min_hz = s.frequency.list.front();
                out->f_max_hz = s.frequency.list.back();
                out->f_step_hz = 0.0;
            }
            out->bounces = s.options.bounces;
            out->tail = s.options.tail ? 1 : 0;
            out->tail_delay_offset = s.options.tail_delay_offset ? 1 : 0;
            out->has_rho1 = s.options.rho1 ? 1 : 0;
            out->rho1 = s.options.rho1.value_or(0.0);
            out->query_frequency_hz = s.query_frequency;
            out->db_convention = s.db_convention == lifi::DbConvention::amplitude_20log ? LIFI_DB_20LOG : LIFI_DB_10LOG;
            out->mse_mode = s.mse_mode == lifi::MseMode::complex ? LIFI_MSE_COMPLEX : LIFI_MSE_AMPLITUDE;
            out->threads = s.options.threads;
            out->memory_budget_bytes = s.options.memory_budget; });
    }

    lifi_status lifi_scenario_set_options(lifi_scenario *scenario, const lifi_options *o)
    {
        return guarded([&]
                       {
            require(scenario && o, "null argument");
            lifi::Scenario next = scenario->value;
            if (!(o->dx_m > 0.0 && o->dx_m <= next.scene.room.min_dimension()))
                lifi::fail(lifi::ErrorKind::invalid_resolution, "dx must lie in (0, smallest room dimension]");
            next.options.dx = o->dx_m;
            if (o->f_step_hz > 0.0)
            {
                next.frequency.explicit_list = false;
                next.frequency.list.clear();
                next.frequency.f_min = o->f_min_hz;
                next.frequency.f_max = o->f_max_hz;
                next.frequency.step = o->f_step_hz;
                (void)next.frequency.grid();
            }
            require(o->bounces >= 0, "bounces must be >= 0");
            next.options.bounces = o->bounces;
            next.options.tail = o->tail != 0;
            next.options.tail_delay_offset = o->tail_delay_offset != 0;
            if (o->has_rho1)
            {
                require(o->rho1 >= 0.0 && o->rho1 < 1.0, "rho1 must lie in [0, 1)");
                next.options.rho1 = o->rho1;
            }
            else
                next.options.rho1.reset();
            next.query_frequency = o->query_frequency_hz;
            next.db_convention = to_conv(o->db_convention);
            require(o->mse_mode == LIFI_MSE_COMPLEX || o->mse_mode == LIFI_MSE_AMPLITUDE, "unknown MSE mode");
            next.mse_mode = o->mse_mode == LIFI_MSE_COMPLEX ? lifi::MseMode::complex : lifi::MseMode::amplitude;
            next.options.threads = std::max(1u, o->threads);
            require(o->memory_budget_bytes > 0, "memory budget must be > 0");
            next.options.memory_budget = o->memory_budget_bytes;
            scenario->value = std::move(next); });
    }

    size_t lifi_scenario_emitter_count(const lifi_scenario *scenario)
    {
        return scenario ? scenario->value.scene.emitters.size() : 0;
    }

    size_t lifi_scenario_detector_count(const lifi_scenario *scenario)
    {
        return scenario ? scenario->value.scene.detectors.size() : 0;
    }

    lifi_status lifi_scenario_emitter_info(const lifi_scenario *scenario, size_t index, lifi_device_info *out)
    {
        return guarded([&]
                       {
            require(scenario != nullptr && out != nullptr, "null argument");
            require(index < scenario->value.scene.emitters.size(), "emitter index out of range");
            const auto &tx = scenario->value.scene.emitters[index];
            fill_info(tx.id, tx.position, tx.orientation, out); });
    }

    lifi_status lifi_scenario_detector_info(const lifi_scenario *scenario, size_t index, lifi_device_info *out)
    {
        return guarded([&]
                       {
            require(scenario != nullptr && out != nullptr, "null argument");
            require(index < scenario->value.scene.detectors.size(), "detector index out of range");
            const auto &rx = scenario->value.scene.detectors[index];
            fill_info(rx.id, rx.position, rx.orientation, out); });
    }

    lifi_status lifi_scenario_set_detector_pose(lifi_scenario *scenario, size_t index, const lifi_pose *pose)
    {
        return guarded([&]
                       {
            require(scenario && pose, "null argument");
            auto &scene = scenario->value.scene;
            require(index < scene.detectors.size(), "detector index out of range");
            lifi::Detector rx = scene.detectors[index];
            const lifi::Pose p = to_pose(*pose);
            rx.position = p.position;
            rx.orientation = p.orientation;
            lifi::validate_detector(scene.room, rx);
            scene.detectors[index] = rx; });
    }

    lifi_status lifi_scenario_room(const lifi_scenario *scenario, double dims[3])
    {
        return guarded([&]
                       {
            require(scenario && dims, "null argument");
            const auto &room = scenario->value.scene.room;
            dims[0] = room.length_x;
            dims[1] = room.width_y;
            dims[2] = room.height_z; });
    }

    lifi_status lifi_scenario_patch_count(const lifi_scenario *scenario, size_t *count)
    {
        return guarded([&]
                       {
            require(scenario && count, "null argument");
            const auto &s = scenario->value;
            if (!(s.options.dx > 0.0 && s.options.dx <= s.scene.room.min_dimension()))
                lifi::fail(lifi::ErrorKind::invalid_resolution, "dx must lie in (0, smallest room dimension]");
            *count = lifi::patch_count_for(s.scene.room, s.options.dx); });
    }

    double lifi_effective_time_resolution(double dx_m)
    {
        return dx_m > 0.0 ? lifi::effective_time_resolution(dx_m) : std::numeric_limits<double>::quiet_NaN();
    }

    lifi_status lifi_model_build(const lifi_scenario *scenario, lifi_model **out)
    {
        return guarded([&]
                       {
            require(scenario && out, "null argument");
            const auto &s = scenario->value;
            *out = new lifi_model{lifi::ChannelModel(s.scene, s.frequency.grid(), s.options), s}; });
    }

    void lifi_model_free(lifi_model *model) { delete model; }

    size_t lifi_model_patch_count(const lifi_model *model) { return model ? model->value.patches().size() : 0; }

    size_t lifi_model_frequency_count(const lifi_model *model) { return model ? model->value.grid().size() : 0; }

    lifi_status lifi_model_frequencies(const lifi_model *model, double *out, size_t n)
    {
        return guarded([&]
                       {
            require(model && out, "null argument");
            const auto f = model->value.grid().samples();
            require(n == f.size(), "output length differs from the frequency count");
            std::copy(f.begin(), f.end(), out); });
    }

    double lifi_model_build_seconds(const lifi_model *model) { return model ? model->value.build_seconds() : 0.0; }

    double lifi_model_mean_reflectivity(const lifi_model *model)
    {
        return model ? model->value.mean_reflectivity() : 0.0;
    }

    lifi_status lifi_model_tail_params(const lifi_model *model, size_t rx, size_t tx, double *eta, double *decay_s)
    {
        return guarded([&]
                       {
            require(model != nullptr, "null model");
            const auto &m = model->value;
            require(rx < m.scene().detectors.size() && tx < m.scene().emitters.size(), "device index out of range");
            const lifi::SphereParams p = m.sphere(tx, m.scene().detectors[rx].area);
            if (eta)
                *eta = p.eta;
            if (decay_s)
                *decay_s = p.decay; });
    }

    lifi_status lifi_model_evaluate(const lifi_model *model, lifi_channel **out)
    {
        return guarded([&]
                       {
            require(model && out, "null argument");
            *out = new lifi_channel{model->value.matrix()}; });
    }

    void lifi_channel_free(lifi_channel *channel) { delete channel; }

    size_t lifi_channel_detector_count(const lifi_channel *channel)
    {
        return channel ? channel->value.detectors.size() : 0;
    }

    size_t lifi_channel_emitter_count(const lifi_channel *channel)
    {
        return channel ? channel->value.emitters.size() : 0;
    }

    lifi_status lifi_channel_response(const lifi_channel *channel, size_t rx, size_t tx, lifi_component component,
                                      double *re, double *im, size_t n)
    {
        return guarded([&]
                       {
            require(channel != nullptr, "null channel");
            require(rx < channel->value.detectors.size() && tx < channel->value.emitters.size(),
                    "device index out of range");
            copy_series(pick(channel->value.at(rx, tx), component), re, im, n); });
    }

    lifi_status lifi_channel_gain_db(const lifi_channel *channel, size_t rx, size_t tx, double f_hz,
                                     lifi_db_convention convention, double *out)
    {
        return guarded([&]
                       {
            require(channel && out, "null argument");
            require(rx < channel->value.detectors.size() && tx < channel->value.emitters.size(),
                    "device index out of range");
            *out = lifi::gain_db(channel->value.at(rx, tx), f_hz, to_conv(convention)); });
    }

    lifi_status lifi_model_sweep(const lifi_model *model, size_t detector, const lifi_pose *poses, size_t pose_count,
                                 lifi_trace **out)
    {
        return guarded([&]
                       {
            require(model && out && (poses || pose_count == 0), "null argument");
            std::vector<lifi::Pose> p;
            p.reserve(pose_count);
            for (size_t i = 0; i < pose_count; ++i)
                p.push_back(to_pose(poses[i]));
            *out = new lifi_trace{model->value.sweep(detector, p)}; });
    }

    void lifi_trace_free(lifi_trace *trace) { delete trace; }

    size_t lifi_trace_pose_count(const lifi_trace *trace) { return trace ? trace->value.poses.size() : 0; }

    size_t lifi_trace_emitter_count(const lifi_trace *trace)
    {
        return trace && !trace->value.links.empty() ? trace->value.links.front().size() : 0;
    }

    lifi_status lifi_trace_response(const lifi_trace *trace, size_t pose, size_t tx, lifi_component component,
                                    double *re, double *im, size_t n)
    {
        return guarded([&]
                       {
            require(trace != nullptr, "null trace");
            copy_series(pick(trace->value.links.at(pose).at(tx), component), re, im, n); });
    }

    lifi_status lifi_trace_distance(const lifi_trace *trace, size_t pose, size_t tx, double *out)
    {
        return guarded([&]
                       {
            require(trace && out, "null argument");
            *out = trace->value.distance.at(pose).at(tx); });
    }

    lifi_status lifi_trace_gain_db(const lifi_trace *trace, size_t pose, size_t tx, double f_hz,
                                   lifi_db_convention convention, double *out)
    {
        return guarded([&]
                       {
            require(trace && out, "null argument");
            *out = lifi::gain_db(trace->value.links.at(pose).at(tx), f_hz, to_conv(convention)); });
    }

    lifi_status lifi_trace_timing(const lifi_trace *trace, double *setup_seconds, double *mean_pose_seconds)
    {
        return guarded([&]
                       {
            require(trace != nullptr, "null trace");
            const auto &t = trace->value;
            if (setup_seconds)
                *setup_seconds = t.setup_seconds;
            if (mean_pose_seconds)
            {
                double sum = 0.0;
                for (double s : t.pose_seconds)
                    sum += s;
                *mean_pose_seconds = t.pose_seconds.empty() ? 0.0 : sum / double(t.pose_seconds.size());
            } });
    }

    lifi_status lifi_relative_mse(const double *meas_re, const double *meas_im, const double *sim_re,
                                  const double *sim_im, size_t n, lifi_mse_mode mode, double *percent)
    {
        return guarded([&]
                       {
            require(meas_re && sim_re && percent, "null argument");
            require(mode == LIFI_MSE_COMPLEX || mode == LIFI_MSE_AMPLITUDE, "unknown MSE mode");
            lifi::ComplexSeries m(n), s(n);
            for (size_t i = 0; i < n; ++i)
            {
                m[i] = {meas_re[i], meas_im ? meas_im[i] : 0.0};
                s[i] = {sim_re[i], sim_im ? sim_im[i] : 0.0};
            }
            *percent = lifi::relative_mse(m, s, mode == LIFI_MSE_COMPLEX ? lifi::MseMode::complex
                                                                       : lifi::MseMode::amplitude); });
    }

    lifi_status lifi_impulse_response(const double *re, const double *im, size_t n, double f_step_hz,
                                      lifi_window window, double *taps, size_t tap_capacity, double *dt_s)
    {
        return guarded([&]
                       {
            require(re && taps, "null argument");
            require(n >= 2 && f_step_hz > 0.0, "need at least two samples and a positive step");
            require(window == LIFI_WINDOW_RECTANGULAR || window == LIFI_WINDOW_HANN, "unknown window");
            const auto grid = lifi::FrequencyGrid::range(0.0, double(n - 1) * f_step_hz, f_step_hz);
            require(grid.size() == n, "frequency step does not reproduce the sample count");
            lifi::ComplexSeries h(n);
            for (size_t i = 0; i < n; ++i)
                h[i] = {re[i], im ? im[i] : 0.0};
            const auto ir = lifi::impulse_response(grid, h, window == LIFI_WINDOW_HANN ? lifi::Window::hann
                                                                                    : lifi::Window::rectangular);
            if (tap_capacity < ir.taps.size())
                lifi::fail(lifi::ErrorKind::capacity, "tap buffer too small");
            std::copy(ir.taps.begin(), ir.taps.end(), taps);
            if (dt_s)
                *dt_s = ir.dt; });
    }

    lifi_status lifi_heatmap_build(const lifi_scenario *scenario, size_t detector_template, double x_step_m,
                                   double y_step_m, double height_m, lifi_heatmap **out)
    {
        return guarded([&]
                       {
            require(scenario && out, "null argument");
            const auto &scene = scenario->value.scene;
            lifi::HeatmapSpec spec;
            spec.x_step = x_step_m;
            spec.y_step = y_step_m;
            spec.height = height_m;
            if (detector_template != static_cast<size_t>(-1))
            {
                require(detector_template < scene.detectors.size(), "detector index out of range");
                spec.rx_template = scene.detectors[detector_template];
            }
            spec.rx_template.orientation = {0.0, 0.0, 1.0};
            *out = new lifi_heatmap{lifi::dc_heatmap(scene, spec)}; });
    }

    void lifi_heatmap_free(lifi_heatmap *map) { delete map; }

    lifi_status lifi_heatmap_dims(const lifi_heatmap *map, size_t *nx, size_t *ny)
    {
        return guarded([&]
                       {
            require(map && nx && ny, "null argument");
            *nx = map->value.x.size();
            *ny = map->value.y.size(); });
    }

    lifi_status lifi_heatmap_axes(const lifi_heatmap *map, double *x, double *y)
    {
        return guarded([&]
                       {
            require(map && x && y, "null argument");
            std::copy(map->value.x.begin(), map->value.x.end(), x);
            std::copy(map->value.y.begin(), map->value.y.end(), y); });
    }

    lifi_status lifi_heatmap_values(const lifi_heatmap *map, double *values)
    {
        return guarded([&]
                       {
            require(map && values, "null argument");
            std::copy(map->value.watts.begin(), map->value.watts.end(), values); });
    }

    lifi_status lifi_oracle_check(const lifi_scenario *scenario, size_t max_patches, int drop_second_bounce,
                                  double *max_relative_deviation, size_t *patch_count, double *dx_used)
    {
        return guarded([&]
                       {
            require(scenario && max_relative_deviation, "null argument");
            const auto &s = scenario->value;
            const auto rep = lifi::oracle_check(s.scene, s.frequency.grid(), s.options, max_patches, drop_second_bounce != 0);
            *max_relative_deviation = rep.max_deviation;
            if (patch_count)
                *patch_count = rep.patch_count;
            if (dx_used)
                *dx_used = rep.dx; });
    }
}
