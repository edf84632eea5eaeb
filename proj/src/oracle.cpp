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


#include "lifi/oracle.hpp"
#include "lifi/error.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace lifi
{
    std::size_t patch_count_for(const Room &room, double dx)
    {
        const std::size_t nx = cells_along(room.length_x, dx), ny = cells_along(room.width_y, dx),
                          nz = cells_along(room.height_z, dx);
        return 2 * (nx * ny + ny * nz + nx * nz);
    }

    OracleReport oracle_check(const Scene &scene, const FrequencyGrid &grid, const SimulationOptions &opt,
                              std::size_t max_patches, bool drop_second_bounce)
    {
        scene.validate();
        OracleReport rep;
        double dx = opt.dx;
        const double limit = scene.room.min_dimension();
        if (!(dx > 0.0))
            fail(ErrorKind::invalid_resolution, "patch resolution must be > 0");
        while (patch_count_for(scene.room, std::min(dx, limit)) > max_patches && dx < limit)
            dx *= 1.25;
        dx = std::min(dx, limit);
        rep.dx = dx;

        // Patch overrides are tied to the original tiling; the reduced scene uses face values only.
        Scene reduced = scene;
        reduced.patch_overrides.clear();
        auto patches = std::make_shared<const PatchSet>(discretize(reduced, dx));
        rep.patch_count = patches->size();

        DiffuseOptions dopt;
        dopt.bounces = drop_second_bounce ? 1 : 2;
        dopt.threads = opt.threads;
        dopt.memory_budget = opt.memory_budget;
        const IntrinsicOperator op = build_intrinsic(patches, dopt);

        for (const auto &tx : scene.emitters)
        {
            const SourceField field = source_field(op, tx, grid, dopt);
            for (const auto &rx : scene.detectors)
            {
                const ComplexSeries model = diffuse_response(field, rx, grid);
                const ComplexSeries oracle = brute_force_two_bounce(*patches, tx, rx, grid);
                double peak = 0.0, dev = 0.0;
                for (std::size_t n = 0; n < grid.size(); ++n)
                {
                    peak = std::max(peak, std::abs(oracle[n]));
                    dev = std::max(dev, std::abs(model[n] - oracle[n]));
                }
                rep.max_deviation = std::max(rep.max_deviation, peak > 0.0 ? dev / peak : dev);
            }
        }
        return rep;
    }
}
