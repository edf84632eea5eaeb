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


#include "lifi/assembler.hpp"
#include "lifi/coupling.hpp"
#include "lifi/error.hpp"

#include <fftw3.h>

#include <chrono>
#include <mutex>
#include <cmath>
#include <string>

namespace lifi
{
    namespace
    {
        using clock = std::chrono::steady_clock;

        // fftw's planner is not re-entrant.
        std::mutex fftw_planner_mutex;

        double seconds_since(clock::time_point t0)
        {
            return std::chrono::duration<double>(clock::now() - t0).count();
        }

        ComplexSeries los_series(Coupling c, const FrequencyGrid &grid)
        {
            ComplexSeries h(grid.size());
            for (std::size_t n = 0; n < grid.size(); ++n)
                h[n] = at_frequency(c, grid[n]);
            return h;
        }
    }

    const ComplexSeries &TransferFunction::component(Component c) const
    {
        switch (c)
        {
        case Component::los:
            return los;
        case Component::diff2:
            return diffuse;
        case Component::tail:
            return tail;
        case Component::total:
            break;
        }
        return total;
    }

    TransferFunction assemble(FrequencyGrid grid, ComplexSeries los, ComplexSeries diffuse, ComplexSeries tail)
    {
        const std::size_t nf = grid.size();
        if (los.size() != nf || diffuse.size() != nf || tail.size() != nf)
            fail(ErrorKind::grid_mismatch, "component lengths differ from the frequency grid");
        TransferFunction tf;
        tf.total.resize(nf);
        for (std::size_t n = 0; n < nf; ++n)
            tf.total[n] = (los[n] + diffuse[n]) + tail[n];
        tf.grid = std::move(grid);
        tf.los = std::move(los);
        tf.diffuse = std::move(diffuse);
        tf.tail = std::move(tail);
        return tf;
    }

    ChannelModel::ChannelModel(Scene scene, FrequencyGrid grid, SimulationOptions opt)
        : scene_(std::move(scene)), grid_(std::move(grid)), opt_(std::move(opt))
    {
        const auto t0 = clock::now();
        scene_.validate();
        if (grid_.empty())
            fail(ErrorKind::invalid_argument, "empty frequency grid");
        if (opt_.rho1 && !(*opt_.rho1 >= 0.0 && *opt_.rho1 < 1.0))
            fail(ErrorKind::invalid_argument, "rho1 override must lie in [0, 1)");

        patches_ = std::make_shared<const PatchSet>(discretize(scene_, opt_.dx));
        mean_rho_ = average_reflectivity(*patches_);

        DiffuseOptions dopt;
        dopt.bounces = opt_.bounces;
        dopt.threads = opt_.threads;
        dopt.memory_budget = opt_.memory_budget;
        intrinsic_ = std::make_unique<IntrinsicOperator>(build_intrinsic(patches_, dopt));

        fields_.reserve(scene_.emitters.size());
        rho1_.reserve(scene_.emitters.size());
        for (const auto &tx : scene_.emitters)
        {
            fields_.push_back(source_field(*intrinsic_, tx, grid_, dopt));
            rho1_.push_back(opt_.rho1 ? *opt_.rho1 : first_illuminated_reflectivity(*patches_, tx));
        }

        tails_.resize(scene_.detectors.size());
        for (std::size_t r = 0; r < scene_.detectors.size(); ++r)
            for (std::size_t t = 0; t < scene_.emitters.size(); ++t)
                tails_[r].push_back(tail_for(t, scene_.detectors[r].area));
        build_seconds_ = seconds_since(t0);
    }

    SphereParams ChannelModel::sphere(std::size_t tx, double rx_area) const
    {
        return sphere_params(scene_.room, rho1_.at(tx), mean_rho_, rx_area, opt_.tail_delay_offset);
    }

    ComplexSeries ChannelModel::tail_for(std::size_t tx, double rx_area) const
    {
        if (!opt_.tail)
            return ComplexSeries(grid_.size());
        return tail_response(sphere(tx, rx_area), grid_);
    }

    TransferFunction ChannelModel::link(const Detector &rx, const ReceiveVector &rv, std::size_t tx,
                                        const ComplexSeries &tail) const
    {
        const Emitter &em = scene_.emitters.at(tx);
        ComplexSeries los = los_series(emitter_to_detector(em, rx), grid_);
        for (auto &h : los)
            h *= em.optical_power;
        ComplexSeries diff = diffuse_response(fields_[tx], rv);
        ComplexSeries tl = tail;
        if (em.optical_power != 1.0)
        {
            for (auto &h : diff)
                h *= em.optical_power;
            for (auto &h : tl)
                h *= em.optical_power;
        }
        return assemble(grid_, std::move(los), std::move(diff), std::move(tl));
    }

    TransferFunction ChannelModel::link(std::size_t rx, std::size_t tx) const
    {
        const Detector &det = scene_.detectors.at(rx);
        return link(det, receive_vector(*patches_, det), tx, tails_[rx].at(tx));
    }

    TransferFunction ChannelModel::link(const Detector &rx, std::size_t tx) const
    {
        validate_detector(scene_.room, rx);
        return link(rx, receive_vector(*patches_, rx), tx, tail_for(tx, rx.area));
    }

    ChannelMatrix ChannelModel::matrix() const
    {
        ChannelMatrix m;
        m.detectors = scene_.detectors;
        m.emitters = scene_.emitters;
        m.links.reserve(m.detectors.size() * m.emitters.size());
        for (std::size_t r = 0; r < m.detectors.size(); ++r)
        {
            const ReceiveVector rv = receive_vector(*patches_, m.detectors[r]);
            for (std::size_t t = 0; t < m.emitters.size(); ++t)
                m.links.push_back(link(m.detectors[r], rv, t, tails_[r][t]));
        }
        return m;
    }

    MobilityTrace ChannelModel::sweep(std::size_t detector, std::span<const Pose> poses) const
    {
        if (detector >= scene_.detectors.size())
            fail(ErrorKind::invalid_argument, "sweep detector index " + std::to_string(detector) + " out of range");

        // Reject bad poses before any work is done.
        for (std::size_t p = 0; p < poses.size(); ++p)
        {
            Detector rx = scene_.detectors[detector];
            rx.position = poses[p].position;
            rx.orientation = poses[p].orientation;
            try
            {
                validate_detector(scene_.room, rx);
            }
            catch (const Error &e)
            {
                fail(e.kind(), "pose " + std::to_string(p) + ": " + e.what());
            }
        }

        MobilityTrace trace;
        trace.detector = detector;
        trace.poses.assign(poses.begin(), poses.end());
        trace.setup_seconds = build_seconds_;
        for (const Pose &pose : poses)
        {
            const auto t0 = clock::now();
            Detector rx = scene_.detectors[detector];
            rx.position = pose.position;
            rx.orientation = pose.orientation;
            const ReceiveVector rv = receive_vector(*patches_, rx);
            std::vector<TransferFunction> row;
            std::vector<double> dist;
            for (std::size_t t = 0; t < scene_.emitters.size(); ++t)
            {
                row.push_back(link(rx, rv, t, tails_[detector][t]));
                dist.push_back(norm(rx.position - scene_.emitters[t].position));
            }
            trace.links.push_back(std::move(row));
            trace.distance.push_back(std::move(dist));
            trace.pose_seconds.push_back(seconds_since(t0));
        }
        return trace;
    }

    TransferFunction link_response(const Room &room, const Emitter &tx, const Detector &rx, const FrequencyGrid &grid,
                                   const SimulationOptions &opt)
    {
        Scene s;
        s.room = room;
        s.emitters = {tx};
        s.detectors = {rx};
        return ChannelModel(std::move(s), grid, opt).link(0, 0);
    }

    ChannelMatrix mimo_matrix(const Scene &scene, const FrequencyGrid &grid, const SimulationOptions &opt)
    {
        return ChannelModel(scene, grid, opt).matrix();
    }

    MobilityTrace mobility_sweep(const Scene &scene, std::size_t detector, std::span<const Pose> poses,
                                 const FrequencyGrid &grid, const SimulationOptions &opt)
    {
        return ChannelModel(scene, grid, opt).sweep(detector, poses);
    }

    double to_db(double magnitude, DbConvention conv)
    {
        const double scale = conv == DbConvention::amplitude_20log ? 20.0 : 10.0;
        return scale * std::log10(magnitude);
    }

    double gain_db(const TransferFunction &tf, double f, DbConvention conv, double offset_db)
    {
        const std::size_t n = tf.grid.nearest(f);
        return to_db(std::abs(tf.total[n]), conv) + offset_db;
    }

    double relative_mse(std::span<const std::complex<double>> measured, std::span<const std::complex<double>> simulated,
                        MseMode mode)
    {
        if (measured.size() != simulated.size())
            fail(ErrorKind::grid_mismatch, "measured and simulated responses have different lengths (" +
                                               std::to_string(measured.size()) + " vs " +
                                               std::to_string(simulated.size()) + ")");
        double err = 0.0, ref = 0.0;
        for (std::size_t n = 0; n < measured.size(); ++n)
        {
            const double e = mode == MseMode::complex ? std::norm(measured[n] - simulated[n])
                                                      : std::pow(std::abs(measured[n]) - std::abs(simulated[n]), 2);
            err += e;
            ref += std::norm(measured[n]);
        }
        if (!(ref > 0.0))
            fail(ErrorKind::undefined_reference, "measured response is identically zero");
        return 100.0 * err / ref;
    }

    double relative_mse(const TransferFunction &measured, const TransferFunction &simulated, MseMode mode)
    {
        if (!(measured.grid == simulated.grid))
            fail(ErrorKind::grid_mismatch, "measured and simulated responses use different frequency grids");
        return relative_mse(measured.total, simulated.total, mode);
    }

    Heatmap dc_heatmap(const Scene &scene, const HeatmapSpec &spec)
    {
        scene.room.validate();
        for (const auto &tx : scene.emitters)
            validate_emitter(scene.room, tx);
        if (!(spec.x_step > 0.0) || !(spec.y_step > 0.0))
            fail(ErrorKind::invalid_argument, "heat-map steps must be > 0");
        if (!(spec.height > 0.0 && spec.height < scene.room.height_z))
            fail(ErrorKind::invalid_argument, "heat-map height must lie strictly inside the room");

        Heatmap map;
        const std::size_t nx = cells_along(scene.room.length_x, spec.x_step);
        const std::size_t ny = cells_along(scene.room.width_y, spec.y_step);
        for (std::size_t i = 0; i < nx; ++i)
            map.x.push_back((double(i) + 0.5) * scene.room.length_x / double(nx));
        for (std::size_t j = 0; j < ny; ++j)
            map.y.push_back((double(j) + 0.5) * scene.room.width_y / double(ny));
        map.watts.assign(nx * ny, 0.0);

        Detector rx = spec.rx_template;
        for (std::size_t j = 0; j < ny; ++j)
            for (std::size_t i = 0; i < nx; ++i)
            {
                rx.position = {map.x[i], map.y[j], spec.height};
                validate_detector(scene.room, rx);
                double p = 0.0;
                for (const auto &tx : scene.emitters)
                    p += tx.optical_power * emitter_to_detector(tx, rx).gain;
                map.watts[j * nx + i] = p;
            }
        return map;
    }

    ImpulseResponse impulse_response(const FrequencyGrid &grid, std::span<const std::complex<double>> h, Window window)
    {
        const std::size_t nf = grid.size();
        if (h.size() != nf)
            fail(ErrorKind::grid_mismatch, "response length differs from the frequency grid");
        if (nf < 2 || !grid.uniform() || grid[0] != 0.0)
            fail(ErrorKind::invalid_argument, "impulse response needs a uniform grid starting at 0 Hz");

        // Real output of length 2 (nf - 1); fftw's c2r performs the Hermitian extension.
        const std::size_t m = 2 * (nf - 1);
        fftw_complex *in = fftw_alloc_complex(nf);
        double *out = fftw_alloc_real(m);
        fftw_plan plan;
        {
            std::lock_guard lock(fftw_planner_mutex);
            plan = fftw_plan_dft_c2r_1d(int(m), in, out, FFTW_ESTIMATE);
        }
        for (std::size_t n = 0; n < nf; ++n)
        {
            double w = 1.0;
            if (window == Window::hann)
                w = 0.5 * (1.0 + std::cos(pi * double(n) / double(nf - 1)));
            in[n][0] = w * h[n].real();
            in[n][1] = w * h[n].imag();
        }
        fftw_execute(plan);

        ImpulseResponse ir;
        ir.dt = 1.0 / (double(m) * grid.step());
        ir.taps.assign(out, out + m);
        for (auto &v : ir.taps)
            v /= double(m);
        {
            std::lock_guard lock(fftw_planner_mutex);
            fftw_destroy_plan(plan);
        }
        fftw_free(in);
        fftw_free(out);
        return ir;
    }

    ImpulseResponse impulse_response(const TransferFunction &tf, Component c, Window window)
    {
        return impulse_response(tf.grid, tf.component(c), window);
    }
}
