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


#include "lifi/coupling.hpp"
#include "lifi/error.hpp"

#include <cmath>

namespace lifi
{
    namespace
    {
        constexpr double half_space = pi / 2.0;
    }

    Coupling lambertian_coupling(Vec3 src_pos, Vec3 src_dir, double order, Vec3 dst_pos, Vec3 dst_dir,
                                 double dst_area, double dst_fov)
    {
        const Vec3 sep = dst_pos - src_pos;
        const double d2 = dot(sep, sep);
        if (!(d2 > 0.0))
            fail(ErrorKind::degenerate_geometry, "source and sink positions coincide");
        const double d = std::sqrt(d2);

        Coupling c;
        c.delay = d / speed_of_light;

        const double cos_emit = dot(src_dir, sep) / d;
        const double cos_inc = -dot(dst_dir, sep) / d;
        if (cos_emit <= 0.0 || cos_inc <= 0.0)
            return c;
        if (dst_fov < half_space && cos_inc < std::cos(dst_fov))
            return c;

        const double pattern = order == 1.0 ? cos_emit : std::pow(cos_emit, order);
        c.gain = (order + 1.0) / (2.0 * pi) * pattern * cos_inc * dst_area / d2;
        return c;
    }

    Coupling emitter_to_detector(const Emitter &tx, const Detector &rx)
    {
        return lambertian_coupling(tx.position, tx.orientation, tx.lambertian_order, rx.position, rx.orientation,
                                   rx.area, rx.fov);
    }

    Coupling emitter_to_patch(const Emitter &tx, const PatchSet &patches, std::size_t k)
    {
        return lambertian_coupling(tx.position, tx.orientation, tx.lambertian_order, patches.centers()[k],
                                   patches.normals()[k], patches.areas()[k], half_space);
    }

    Coupling patch_to_patch(const PatchSet &patches, std::size_t src, std::size_t dst)
    {
        if (src == dst)
            fail(ErrorKind::invalid_argument, "patch self-coupling is undefined");
        return lambertian_coupling(patches.centers()[src], patches.normals()[src], 1.0, patches.centers()[dst],
                                   patches.normals()[dst], patches.areas()[dst], half_space);
    }

    Coupling patch_to_detector(const PatchSet &patches, std::size_t k, const Detector &rx)
    {
        return lambertian_coupling(patches.centers()[k], patches.normals()[k], 1.0, rx.position, rx.orientation,
                                   rx.area, rx.fov);
    }
}
