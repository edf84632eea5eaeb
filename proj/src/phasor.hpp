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

#include "lifi/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace lifi::detail
{
    // Exact phasors are re-evaluated every this many samples on uniform grids; in between the
    // phasor is advanced by one complex multiplication.
    inline constexpr std::size_t phasor_resync = 64;

    // Calls fn(n, re, im) with exp(-j 2 pi f_n delay) for every grid sample in increasing n.
    template <class Fn>
    inline void for_each_phasor(const FrequencyGrid &grid, double delay, Fn &&fn)
    {
        const auto f = grid.samples();
        const std::size_t nf = f.size();
        const double w = -2.0 * pi * delay;
        if (!grid.uniform())
        {
            for (std::size_t n = 0; n < nf; ++n)
                fn(n, std::cos(w * f[n]), std::sin(w * f[n]));
            return;
        }
        const double cs = std::cos(w * grid.step()), sn = std::sin(w * grid.step());
        for (std::size_t start = 0; start < nf; start += phasor_resync)
        {
            double pr = std::cos(w * f[start]), pi_ = std::sin(w * f[start]);
            const std::size_t end = std::min(nf, start + phasor_resync);
            for (std::size_t n = start; n < end; ++n)
            {
                fn(n, pr, pi_);
                const double nr = pr * cs - pi_ * sn;
                pi_ = pr * sn + pi_ * cs;
                pr = nr;
            }
        }
    }
}
