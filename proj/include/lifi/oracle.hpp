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

#include "lifi/assembler.hpp"

#include <cstddef>

namespace lifi
{
    struct OracleReport
    {
        double dx = 0.0;              // resolution actually used
        std::size_t patch_count = 0;
        double max_deviation = 0.0;   // max over links of max_f |model - oracle| / max_f |oracle|
    };

    // Patch count discretize() would produce, without building the patches.
    std::size_t patch_count_for(const Room &room, double dx);

    // Coarsens dx (x1.25 steps) until the patch count is <= max_patches, then compares
    // diffuse_response against brute_force_two_bounce for every emitter/detector pair.
    OracleReport oracle_check(const Scene &scene, const FrequencyGrid &grid, const SimulationOptions &opt,
                              std::size_t max_patches = 150, bool drop_second_bounce = false);
}
