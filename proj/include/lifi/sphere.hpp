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

namespace lifi
{
    // Integrating-sphere model of every diffuse reflection from the third order on.

    // rho1 * (A_rx / A_room) * <rho>^2 / (1 - <rho>)
    double tail_gain(double rho1, double mean_rho, double rx_area, double room_area);

    // Same quantity before simplification: rho1 * (A_rx / A_room) * (1 / (1 - <rho>) - 1 - <rho>).
    double tail_gain_series_form(double rho1, double mean_rho, double rx_area, double room_area);

    // Mean time between reflections, 4 V / (c A_room).
    double mean_interreflection_time(const Room &room);

    // tau = -<t> / ln <rho>; zero for a black room.
    double decay_time(const Room &room, double mean_rho);

    struct SphereParams
    {
        double eta = 0.0;          // tail DC gain
        double decay = 0.0;        // s
        double rho1 = 0.0;
        double mean_rho = 0.0;
        double rx_area = 0.0;      // m^2
        double room_area = 0.0;    // m^2
        double delay_offset = 0.0; // s, optional pure delay applied to the tail (default none)
    };

    SphereParams sphere_params(const Room &room, double rho1, double mean_rho, double rx_area,
                               bool with_delay_offset = false);

    // eta / (1 + j 2 pi f tau), times exp(-j 2 pi f t0) when a delay offset is set.
    ComplexSeries tail_response(const SphereParams &p, const FrequencyGrid &grid);

    // Reflectivity of the face that collects the largest direct DC flux from the emitter.
    double first_illuminated_reflectivity(const PatchSet &patches, const Emitter &tx);
}
