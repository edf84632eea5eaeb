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


#include "lifi/sphere.hpp"
#include "lifi/coupling.hpp"
#include "lifi/error.hpp"

#include <array>
#include <cmath>

namespace lifi
{
    namespace
    {
        void check_cavity(double rho1, double mean_rho, double rx_area, double room_area)
        {
            if (!(mean_rho < 1.0))
                fail(ErrorKind::divergent_cavity, "average reflectivity must be < 1 for a convergent cavity");
            if (!(mean_rho >= 0.0) || !(rho1 >= 0.0 && rho1 < 1.0))
                fail(ErrorKind::invalid_argument, "reflectivities must lie in [0, 1)");
            if (!(rx_area > 0.0) || !(room_area > 0.0))
                fail(ErrorKind::invalid_argument, "areas must be > 0");
        }
    }

    double tail_gain(double rho1, double mean_rho, double rx_area, double room_area)
    {
        check_cavity(rho1, mean_rho, rx_area, room_area);
        return rho1 * (rx_area / room_area) * (mean_rho * mean_rho / (1.0 - mean_rho));
    }

    double tail_gain_series_form(double rho1, double mean_rho, double rx_area, double room_area)
    {
        check_cavity(rho1, mean_rho, rx_area, room_area);
        return rho1 * (rx_area / room_area) * (1.0 / (1.0 - mean_rho) - 1.0 - mean_rho);
    }

    double mean_interreflection_time(const Room &room)
    {
        return 4.0 * room.volume() / (speed_of_light * room.surface_area());
    }

    double decay_time(const Room &room, double mean_rho)
    {
        if (!(mean_rho < 1.0))
            fail(ErrorKind::divergent_cavity, "average reflectivity must be < 1 for a convergent cavity");
        if (!(mean_rho >= 0.0))
            fail(ErrorKind::invalid_argument, "average reflectivity must be >= 0");
        if (mean_rho == 0.0)
            return 0.0;
        return -mean_interreflection_time(room) / std::log(mean_rho);
    }

    SphereParams sphere_params(const Room &room, double rho1, double mean_rho, double rx_area, bool with_delay_offset)
    {
        SphereParams p;
        p.rho1 = rho1;
        p.mean_rho = mean_rho;
        p.rx_area = rx_area;
        p.room_area = room.surface_area();
        p.eta = tail_gain(rho1, mean_rho, rx_area, p.room_area);
        p.decay = decay_time(room, mean_rho);
        if (with_delay_offset)
            p.delay_offset = 2.0 * mean_interreflection_time(room);
        return p;
    }

    ComplexSeries tail_response(const SphereParams &p, const FrequencyGrid &grid)
    {
        ComplexSeries h(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n)
        {
            const double w = 2.0 * pi * grid[n];
            h[n] = p.eta / std::complex<double>(1.0, w * p.decay);
            if (p.delay_offset != 0.0)
                h[n] *= std::polar(1.0, -w * p.delay_offset);
        }
        return h;
    }

    double first_illuminated_reflectivity(const PatchSet &patches, const Emitter &tx)
    {
        std::array<double, face_count> flux{};
        for (std::size_t k = 0; k < patches.size(); ++k)
            flux[static_cast<std::size_t>(patches.faces()[k])] += emitter_to_patch(tx, patches, k).gain;
        std::size_t best = 0;
        for (std::size_t f = 1; f < face_count; ++f)
            if (flux[f] > flux[best])
                best = f;
        return patches.room().reflectivity[best];
    }
}
