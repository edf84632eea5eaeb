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


#pragma once

#include "lifi/diffuse.hpp"
#include "lifi/scene.hpp"
#include "lifi/sphere.hpp"

#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace lifi
{
    enum class Component
    {
        los,
        diff2,
        tail,
        total
    };

    enum class DbConvention
    {
        amplitude_20log, // 20 log10 |H|
        power_10log,     // 10 log10 |H|
    };

    enum class MseMode
    {
        complex,   // |H_m - H_s|^2
        amplitude, // (|H_m| - |H_s|)^2
    };

    struct SimulationOptions
    {
        double dx = 0.25;               // patch resolution, m
        int bounces = 2;                // orders handled by the patch model
        bool tail = true;               // add the integrating-sphere tail
        bool tail_delay_offset = false; // delay the tail by two mean inter-reflection times
        std::optional<double> rho1;     // overrides the first-illuminated reflectivity
        unsigned threads = 1;
        std::size_t memory_budget = default_memory_budget();

        friend bool operator==(const SimulationOptions &, const SimulationOptions &) = default;
    };

    // Channel response with its components kept apart; total = (los + diffuse) + tail per sample.
    struct TransferFunction
    {
        FrequencyGrid grid;
        ComplexSeries los;
        ComplexSeries diffuse;
        ComplexSeries tail;
        ComplexSeries total;

        const ComplexSeries &component(Component c) const;
    };

    TransferFunction assemble(FrequencyGrid grid, ComplexSeries los, ComplexSeries diffuse, ComplexSeries tail);

    // detectors x emitters, row-major.
    struct ChannelMatrix
    {
        std::vector<Detector> detectors;
        std::vector<Emitter> emitters;
        std::vector<TransferFunction> links;

        const TransferFunction &at(std::size_t rx, std::size_t tx) const { return links.at(rx * emitters.size() + tx); }
    };

    struct Pose
    {
        Vec3 position;
        Vec3 orientation{0.0, 0.0, 1.0};
    };

    // One moving detector evaluated at a sequence of poses against all emitters.
    struct MobilityTrace
    {
        std::size_t detector = 0;
        std::vector<Pose> poses;
        std::vector<std::vector<TransferFunction>> links; // [pose][emitter]
        std::vector<std::vector<double>> distance;        // [pose][emitter], m
        double setup_seconds = 0.0;                       // cold build shared by every pose
        std::vector<double> pose_seconds;
    };

    // Scene-level cache: patches, intrinsic operator, one source field per emitter, cavity
    // parameters. Everything here is immutable after construction; evaluation methods are const
    // and may run concurrently.
    class ChannelModel
    {
    public:
        ChannelModel(Scene scene, FrequencyGrid grid, SimulationOptions opt = {});

        const Scene &scene() const { return scene_; }
        const FrequencyGrid &grid() const { return grid_; }
        const SimulationOptions &options() const { return opt_; }
        const PatchSet &patches() const { return *patches_; }
        const IntrinsicOperator &intrinsic() const { return *intrinsic_; }
        const SourceField &source(std::size_t tx) const { return fields_.at(tx); }
        double mean_reflectivity() const { return mean_rho_; }
        double rho1(std::size_t tx) const { return rho1_.at(tx); }
        double build_seconds() const { return build_seconds_; }

        // Cavity parameters for emitter tx seen by a detector of the given area.
        SphereParams sphere(std::size_t tx, double rx_area) const;

        TransferFunction link(std::size_t rx, std::size_t tx) const;
        TransferFunction link(const Detector &rx, std::size_t tx) const;
        ChannelMatrix matrix() const;

        // Re-evaluates only LOS terms and receive vectors per pose.
        MobilityTrace sweep(std::size_t detector, std::span<const Pose> poses) const;

    private:
        TransferFunction link(const Detector &rx, const ReceiveVector &rv, std::size_t tx,
                              const ComplexSeries &tail) const;
        ComplexSeries tail_for(std::size_t tx, double rx_area) const;

        Scene scene_;
        FrequencyGrid grid_;
        SimulationOptions opt_;
        std::shared_ptr<const PatchSet> patches_;
        std::unique_ptr<IntrinsicOperator> intrinsic_;
        std::vector<SourceField> fields_;
        std::vector<double> rho1_;
        double mean_rho_ = 0.0;
        std::vector<std::vector<ComplexSeries>> tails_; // [detector][emitter]
        double build_seconds_ = 0.0;
    };

    TransferFunction link_response(const Room &room, const Emitter &tx, const Detector &rx, const FrequencyGrid &grid,
                                   const SimulationOptions &opt = {});
    ChannelMatrix mimo_matrix(const Scene &scene, const FrequencyGrid &grid, const SimulationOptions &opt = {});
    MobilityTrace mobility_sweep(const Scene &scene, std::size_t detector, std::span<const Pose> poses,
                                 const FrequencyGrid &grid, const SimulationOptions &opt = {});

    // Level of |H| at the grid sample nearest to f, plus an optional registration offset.
    double to_db(double magnitude, DbConvention conv);
    double gain_db(const TransferFunction &tf, double f, DbConvention conv = DbConvention::amplitude_20log,
                   double offset_db = 0.0);

    // 100 * sum |H_m - H_s|^2 / sum |H_m|^2, in percent.
    double relative_mse(std::span<const std::complex<double>> measured, std::span<const std::complex<double>> simulated,
                        MseMode mode = MseMode::complex);
    double relative_mse(const TransferFunction &measured, const TransferFunction &simulated,
                        MseMode mode = MseMode::complex);

    struct HeatmapSpec
    {
        double x_step = 0.1;
        double y_step = 0.1;
        double height = 1.0;
        Detector rx_template; // position is replaced per grid point
    };

    // Received DC optical power (W) from all emitters over a horizontal plane, LOS only.
    struct Heatmap
    {
        std::vector<double> x; // cell-centre coordinates, m
        std::vector<double> y;
        std::vector<double> watts; // [iy * x.size() + ix]

        double at(std::size_t ix, std::size_t iy) const { return watts[iy * x.size() + ix]; }
    };

    Heatmap dc_heatmap(const Scene &scene, const HeatmapSpec &spec);

    enum class Window
    {
        rectangular,
        hann,
    };

    struct ImpulseResponse
    {
        double dt = 0.0; // s, equals 1 / (2 f_max)
        std::vector<double> taps;
    };

    // Hermitian extension of a one-sided response on a uniform grid starting at 0 Hz, followed by an
    // inverse real DFT. Taps are scaled so they sum to H(0).
    ImpulseResponse impulse_response(const FrequencyGrid &grid, std::span<const std::complex<double>> h,
                                     Window window = Window::rectangular);
    ImpulseResponse impulse_response(const TransferFunction &tf, Component c = Component::total,
                                     Window window = Window::rectangular);
}
