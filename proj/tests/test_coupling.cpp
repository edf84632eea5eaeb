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


#include <catch2/catch_amalgamated.hpp>

#include "lifi/coupling.hpp"
#include "lifi/error.hpp"

#include <random>

using namespace lifi;
using Catch::Approx;

namespace
{
    Room make_room(double x, double y, double z)
    {
        Room r;
        r.length_x = x;
        r.width_y = y;
        r.height_z = z;
        r.reflectivity.fill(0.7);
        return r;
    }

    Vec3 unit(Vec3 v) { return (1.0 / norm(v)) * v; }

    // Coaxial facing pair at distance d along +x.
    Emitter tx_at_origin() { return {"Tx", {1, 1, 1}, {1, 0, 0}, 1.0, 1.0}; }
    Detector rx_at(double d, double fov = pi / 2) { return {"Rx", {1 + d, 1, 1}, {-1, 0, 0}, 1e-4, fov}; }

    size_t patch_index(const PatchSet &ps, Face f, size_t row, size_t col)
    {
        const auto &t = ps.tiling(f);
        return t.first + row * t.cols + col;
    }
}

TEST_CASE("emitter_to_detector: coaxial reference values", "[coupling]")
{
    const Coupling c = emitter_to_detector(tx_at_origin(), rx_at(1.0));
    CHECK(c.gain == Approx(3.1831e-5).epsilon(1e-4));
    CHECK(c.gain == Approx(1e-4 / pi).epsilon(1e-14));
    CHECK(c.delay == Approx(3.3356e-9).epsilon(1e-4));
    CHECK(c.delay == Approx(1.0 / speed_of_light).epsilon(1e-15));

    const Coupling far = emitter_to_detector(tx_at_origin(), rx_at(2.0));
    CHECK(far.gain == Approx(7.9577e-6).epsilon(1e-4));
    CHECK(far.gain == Approx(c.gain / 4).epsilon(1e-14));
}

TEST_CASE("emitter_to_detector: FOV cutoff is exact", "[coupling]")
{
    const double fov = 30.0 * pi / 180.0;
    for (double eps : {1e-6, -1e-6})
    {
        Detector rx = rx_at(1.0, fov);
        const double a = fov + eps;
        rx.orientation = {-std::cos(a), std::sin(a), 0.0};
        const double g = emitter_to_detector(tx_at_origin(), rx).gain;
        if (eps > 0)
            CHECK(g == 0.0);
        else
            CHECK(g > 0.0);
    }
}

TEST_CASE("emitter_to_detector: zero clamp and degenerate geometry", "[coupling]")
{
    Detector behind = rx_at(1.0);
    behind.position = {0.2, 1, 1};
    CHECK(emitter_to_detector(tx_at_origin(), behind).gain == 0.0);

    Detector away = rx_at(1.0);
    away.orientation = {1, 0, 0};
    CHECK(emitter_to_detector(tx_at_origin(), away).gain == 0.0);

    Detector same = rx_at(1.0);
    same.position = tx_at_origin().position;
    try
    {
        emitter_to_detector(tx_at_origin(), same);
        FAIL("expected degenerate geometry");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::degenerate_geometry);
    }
}

TEST_CASE("emitter_to_detector: inverse-square law under distance scaling", "[coupling]")
{
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    std::uniform_real_distribution<double> s(0.2, 5.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const Vec3 dir = unit({n(rng), n(rng), n(rng)});
        const Vec3 txo = unit(dir + 0.3 * Vec3{n(rng), n(rng), n(rng)});
        const Vec3 rxo = unit(-1.0 * dir + 0.3 * Vec3{n(rng), n(rng), n(rng)});
        const Emitter tx{"Tx", {0, 0, 0}, txo, 1.0 + 4.0 * std::abs(n(rng)), 1.0};
        const Detector near{"Rx", dir, rxo, 1e-4, pi / 2};
        const double k = s(rng);
        Detector far = near;
        far.position = k * dir;
        const double g1 = emitter_to_detector(tx, near).gain, gk = emitter_to_detector(tx, far).gain;
        CHECK(gk == Approx(g1 / (k * k)).epsilon(1e-12));
    }
}

TEST_CASE("patch_to_patch: facing parallel patches", "[coupling]")
{
    const PatchSet ps = discretize(make_room(1.0, 0.1, 0.1), 0.1);
    const size_t a = patch_index(ps, Face::wall_x0, 0, 0), b = patch_index(ps, Face::wall_x1, 0, 0);
    REQUIRE(ps.areas()[b] == Approx(0.01).epsilon(1e-12));
    const Coupling c = patch_to_patch(ps, a, b);
    CHECK(c.gain == Approx(3.1831e-3).epsilon(1e-4));
    CHECK(c.gain == Approx(ps.areas()[b] / pi).epsilon(1e-12));
    CHECK(c.delay == Approx(1.0 / speed_of_light).epsilon(1e-12));
}

TEST_CASE("patch_to_patch: coplanar pairs vanish, reciprocity holds", "[coupling]")
{
    const PatchSet ps = discretize(make_room(3.0, 2.0, 1.7), 0.3);
    const auto &floor = ps.tiling(Face::floor);
    CHECK(patch_to_patch(ps, floor.first, floor.first + 1).gain == 0.0);
    CHECK(patch_to_patch(ps, floor.first, floor.first + floor.cols + 3).gain == 0.0);
    CHECK_THROWS_AS(patch_to_patch(ps, 4, 4), Error);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<size_t> pick(0, ps.size() - 1);
    for (int trial = 0; trial < 500; ++trial)
    {
        const size_t i = pick(rng), k = pick(rng);
        if (i == k)
            continue;
        const double lki = patch_to_patch(ps, k, i).gain, lik = patch_to_patch(ps, i, k).gain;
        CHECK(lki / ps.areas()[i] == Approx(lik / ps.areas()[k]).epsilon(1e-12));
        CHECK(lki >= 0.0);
    }
}

TEST_CASE("emitter_to_patch", "[coupling]")
{
    const PatchSet ps = discretize(make_room(5.0, 5.0, 3.0), 0.25);
    const size_t k = patch_index(ps, Face::floor, 7, 9);
    const Vec3 below = ps.centers()[k];
    REQUIRE(ps.areas()[k] == Approx(0.0625).epsilon(1e-12));

    const Emitter tx{"Tx", {below.x, below.y, 1.85}, {0, 0, -1}, 1.0, 1.0};
    const Coupling c = emitter_to_patch(tx, ps, k);
    CHECK(c.gain == Approx(5.8128e-3).epsilon(1e-4));
    CHECK(c.gain == Approx(0.0625 / (pi * 1.85 * 1.85)).epsilon(1e-12));
    CHECK(c.delay == Approx(1.85 / speed_of_light).epsilon(1e-12));

    const Emitter up{"Tx", {below.x, below.y, 1.85}, {0, 0, 1}, 1.0, 1.0};
    CHECK(emitter_to_patch(up, ps, k).gain == 0.0);

    const Emitter ceiling{"Tx", {2.5, 2.5, 3.0 - 1e-9}, {0, 0, -1}, 1.0, 1.0};
    const auto &ct = ps.tiling(Face::ceiling);
    for (size_t j = ct.first; j < ct.first + ct.rows * ct.cols; ++j)
        CHECK(emitter_to_patch(ceiling, ps, j).gain == 0.0);
}

TEST_CASE("patch_to_detector", "[coupling]")
{
    const PatchSet ps = discretize(make_room(5.0, 5.0, 3.0), 0.25);
    const size_t k = patch_index(ps, Face::ceiling, 4, 4);
    const Vec3 above = ps.centers()[k];

    const Detector rx{"Rx", {above.x, above.y, 1.0}, {0, 0, 1}, 1e-4, pi / 2};
    const Coupling c = patch_to_detector(ps, k, rx);
    CHECK(c.gain == Approx(1e-4 / (pi * 4.0)).epsilon(1e-12));
    CHECK(c.delay == Approx(2.0 / speed_of_light).epsilon(1e-12));

    Detector down = rx;
    down.orientation = {0, 0, -1};
    CHECK(patch_to_detector(ps, k, down).gain == 0.0);

    Detector narrow = rx;
    narrow.position = {above.x + 1.0, above.y, 1.0};
    narrow.fov = 20.0 * pi / 180.0;
    CHECK(patch_to_detector(ps, k, narrow).gain == 0.0);
    narrow.fov = 30.0 * pi / 180.0;
    CHECK(patch_to_detector(ps, k, narrow).gain > 0.0);
}

TEST_CASE("at_frequency", "[coupling]")
{
    const Coupling c{3.1831e-5, 3.3356e-9};
    CHECK(at_frequency(c, 0.0) == std::complex<double>(c.gain, 0.0));

    const auto h = at_frequency(c, 100e6);
    CHECK(std::arg(h) == Approx(-2.0958).epsilon(1e-4));
    CHECK(std::arg(h) == Approx(-2.0 * pi * 1e8 * 3.3356e-9).epsilon(1e-12));

    for (double f : {1.0, 3.7e6, 99e6, 250e6, 1e12})
        CHECK(std::abs(at_frequency(c, f)) == Approx(c.gain).epsilon(1e-14));
}
