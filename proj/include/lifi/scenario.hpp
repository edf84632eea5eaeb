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
#include "lifi/scene.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace lifi
{
    // Frequency grid as written in a scenario: either a range or an explicit list.
    struct FrequencySpec
    {
        bool explicit_list = false;
        double f_min = 0.0;
        double f_max = 250e6;
        double step = 1e6;
        std::vector<double> list;

        FrequencyGrid grid() const;
        friend bool operator==(const FrequencySpec &, const FrequencySpec &) = default;
    };

    struct Scenario
    {
        std::string name;
        std::string description;
        Scene scene;
        FrequencySpec frequency;
        SimulationOptions options; // threads and memory budget are runtime settings, not serialized
        double query_frequency = 5e6;
        DbConvention db_convention = DbConvention::amplitude_20log;
        MseMode mse_mode = MseMode::complex;

        friend bool operator==(const Scenario &, const Scenario &) = default;
    };

    // JSON scenario files. Unknown keys, wrong types and out-of-range values raise ErrorKind::parse
    // with the JSON path (and line/column for syntax errors) in the message.
    Scenario parse_scenario(std::string_view text);
    Scenario load_scenario(const std::string &path);
    std::string serialize_scenario(const Scenario &s);

    std::string_view db_convention_name(DbConvention c);
    DbConvention db_convention_from_name(std::string_view name);
    std::string_view mse_mode_name(MseMode m);
    MseMode mse_mode_from_name(std::string_view name);
}
