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

#include <complex>
#include <cstddef>

namespace lifi
{
    // DC transfer coefficient and propagation delay of one line-of-sight hop.
    struct Coupling
    {
        double gain = 0.0;  // dimensionless
        double delay = 0.0; // s
    };

    // Generalized Lambertian source of order m into a sink with a cosine-weighted aperture:
    //   L = (m + 1) / (2 pi) * cos^m(phi) * cos(theta) * area / d^2
    // Patches re-emit with m = 1, which reduces to cos * cos * area / (pi d^2).
    // L is clamped to zero when either side faces away or theta exceeds the sink's half-angle.
    Coupling lambertian_coupling(Vec3 src_pos, Vec3 src_dir, double order, Vec3 dst_pos, Vec3 dst_dir,
                                 double dst_area, double dst_fov);

    Coupling emitter_to_detector(const Emitter &tx, const Detector &rx);
    Coupling emitter_to_patch(const Emitter &tx, const PatchSet &patches, std::size_t k);
    Coupling patch_to_patch(const PatchSet &patches, std::size_t src, std::size_t dst);
    Coupling patch_to_detector(const PatchSet &patches, std::size_t k, const Detector &rx);

    // L * exp(-j 2 pi f tau)
    inline std::complex<double> at_frequency(Coupling c, double f)
    {
        return std::polar(c.gain, -2.0 * pi * f * c.delay);
    }
}
