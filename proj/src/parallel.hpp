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

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lifi::detail
{
    // Splits [0, count) into contiguous chunks, one per worker. body(begin, end) must only write
    // state owned by its range, which keeps results independent of the thread count.
    template <class Body>
    void parallel_for(std::size_t count, unsigned threads, Body &&body)
    {
        const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
        if (workers <= 1)
        {
            body(std::size_t(0), count);
            return;
        }
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        pool.reserve(workers);
        const std::size_t chunk = (count + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w)
        {
            const std::size_t begin = std::min(count, w * chunk), end = std::min(count, begin + chunk);
            pool.emplace_back([&, w, begin, end]
                              {
                                  try { body(begin, end); }
                                  catch (...) { errors[w] = std::current_exception(); } });
        }
        for (auto &t : pool)
            t.join();
        for (auto &e : errors)
            if (e)
                std::rethrow_exception(e);
    }
}
