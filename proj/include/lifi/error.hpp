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

#include <stdexcept>
#include <string>

namespace lifi
{
    // Failure categories. The C API maps each one to a stable integer code.
    enum class ErrorKind
    {
        invalid_argument,
        invalid_resolution,
        degenerate_geometry,
        divergent_cavity,
        scene_mismatch,
        grid_mismatch,
        undefined_reference,
        capacity,
        parse,
        io,
    };

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };

    [[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
    {
        throw Error(kind, what);
    }
}
