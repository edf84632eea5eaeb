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

#include "lifi/error.hpp"
#include "lifi/scene.hpp"

#include <random>

using namespace lifi;
using Catch::Approx;

namespace
{
    Room make_room(double x, double y, double z, double rho = 0.7)
    {
        Room r;
        r.length_x = x;
        r.width_y = y;
        r.height_z = z;
        r.reflectivity.fill(rho);
        return r;
    }

    template <class F>
    ErrorKind error_kind(F &&f)
    {
        try
        {
            f();
        }
        catch (const Error &e)
        {
            return e.kind();
        }
        FAIL("no lifi::Error thrown");
        return ErrorKind::io;
    }

    const Room conference = [] {
        Room r = make_room(5.8, 4.5, 3.1);
        r.reflectivity = {0.2, 0.8, 0.6, 0.6, 0.6, 0.6};
        return r;
    }();
}

TEST_CASE("discretize: conference room tiling", "[scene]")
{
    const PatchSet ps = discretize(conference, 0.25);
    CHECK(ps.size() == 1956);
    CHECK(ps.total_area() == Approx(116.06).epsilon(1e-6));
    CHECK(ps.tiling(Face::floor).rows == 24);
    CHECK(ps.tiling(Face::floor).cols == 18);
    CHECK(ps.tiling(Face::ceiling).rows * ps.tiling(Face::ceiling).cols == 432);
    CHECK(ps.tiling(Face::wall_x0).rows * ps.tiling(Face::wall_x0).cols == 234);
    CHECK(ps.tiling(Face::wall_y1).rows * ps.tiling(Face::wall_y1).cols == 312);
    CHECK(ps.tiling(Face::wall_y1).first + 312 == ps.size());
}

TEST_CASE("discretize: unit cube", "[scene]")
{
    const Room cube = make_room(1, 1, 1);
    const PatchSet one = discretize(cube, 1.0);
    REQUIRE(one.size() == 6);
    for (double a : one.areas())
        CHECK(a == 1.0);

    const PatchSet four = discretize(cube, 0.5);
    REQUIRE(four.size() == 24);
    for (double a : four.areas())
        CHECK(a == Approx(0.25).epsilon(1e-15));
}

TEST_CASE("discretize: tiling exactness, inward normals, edge bound", "[scene]")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dim(0.7, 6.0), frac(0.05, 1.0);
    for (int trial = 0; trial < 50; ++trial)
    {
        const Room r = make_room(dim(rng), dim(rng), dim(rng));
        const double dx = frac(rng) * r.min_dimension();
        const PatchSet ps = discretize(r, dx);
        CHECK(ps.total_area() == Approx(r.surface_area()).epsilon(1e-6));
        for (size_t k = 0; k < ps.size(); ++k)
        {
            CHECK(dot(ps.normals()[k], r.center() - ps.centers()[k]) > 0.0);
            CHECK(ps.areas()[k] <= dx * dx * (1 + 1e-12));
            CHECK(ps.reflectivities()[k] == r.face_reflectivity(ps.faces()[k]));
        }
    }
}

TEST_CASE("discretize: halving dx multiplies per-face counts by 4", "[scene]")
{
    const Room r = make_room(4.0, 3.0, 2.0);
    const PatchSet coarse = discretize(r, 0.5), fine = discretize(r, 0.25);
    for (size_t f = 0; f < face_count; ++f)
    {
        const auto &c = coarse.tiling(static_cast<Face>(f));
        const auto &d = fine.tiling(static_cast<Face>(f));
        CHECK(d.rows * d.cols == 4 * c.rows * c.cols);
    }
    CHECK(fine.size() == 4 * coarse.size());
}

TEST_CASE("discretize: resolution bounds", "[scene]")
{
    const Room r = make_room(5.8, 4.5, 3.1);
    CHECK(error_kind([&] { discretize(r, 0.0); }) == ErrorKind::invalid_resolution);
    CHECK(error_kind([&] { discretize(r, -0.1); }) == ErrorKind::invalid_resolution);
    CHECK(error_kind([&] { discretize(r, 3.2); }) == ErrorKind::invalid_resolution);
    CHECK(discretize(r, 3.1).size() == 16);
}

TEST_CASE("cells_along tolerates round-off", "[scene]")
{
    CHECK(cells_along(3.1, 0.25) == 13);
    CHECK(cells_along(4.5, 0.25) == 18);
    CHECK(cells_along(5.8, 0.25) == 24);
    CHECK(cells_along(0.3, 0.1) == 3);
    CHECK(cells_along(1.0, 0.1) == 10);
    CHECK(cells_along(1.0, 1.0) == 1);
}

TEST_CASE("effective_time_resolution", "[scene]")
{
    CHECK(effective_time_resolution(0.299792458) == Approx(1e-9).epsilon(1e-15));
    CHECK(effective_time_resolution(0.25) == Approx(0.8339e-9).epsilon(1e-4));
    CHECK(error_kind([] { effective_time_resolution(0.0); }) == ErrorKind::invalid_resolution);
}

TEST_CASE("average_reflectivity", "[scene]")
{
    CHECK(average_reflectivity(discretize(make_room(5.8, 4.5, 3.1, 0.7), 0.5)) == Approx(0.7).epsilon(1e-14));

    Room cube = make_room(1, 1, 1, 0.8);
    cube.reflectivity[static_cast<size_t>(Face::floor)] = 0.2;
    CHECK(average_reflectivity(discretize(cube, 0.25)) == Approx(0.7).epsilon(1e-14));

    const double hand = (0.2 * 26.1 + 0.8 * 26.1 + 0.6 * (2 * 5.8 * 3.1 + 2 * 4.5 * 3.1)) / 116.06;
    CHECK(average_reflectivity(discretize(conference, 0.25)) == Approx(hand).epsilon(1e-12));
    CHECK(hand == Approx(0.5550232638).epsilon(1e-9));

    CHECK_THROWS_AS(average_reflectivity(PatchSet{}), Error);
}

TEST_CASE("patch overrides replace one cell", "[scene]")
{
    Scene s;
    s.room = make_room(2, 2, 2, 0.5);
    s.patch_overrides.push_back({Face::ceiling, 1, 2, 0.1});
    const PatchSet ps = discretize(s, 0.5);
    const auto &t = ps.tiling(Face::ceiling);
    size_t changed = 0;
    for (size_t k = 0; k < ps.size(); ++k)
        changed += ps.reflectivities()[k] != 0.5;
    CHECK(changed == 1);
    CHECK(ps.reflectivities()[t.first + 1 * t.cols + 2] == 0.1);

    s.patch_overrides[0].row = 9;
    CHECK(error_kind([&] { discretize(s, 0.5); }) == ErrorKind::invalid_argument);
}

TEST_CASE("scene validation", "[scene]")
{
    Scene s;
    s.room = make_room(5, 4, 3);
    s.emitters.push_back({"Tx", {1, 1, 2.5}, {0, 0, -1}, 1.0, 1.0});
    s.detectors.push_back({"Rx", {2, 2, 1}, {0, 0, 1}, 1e-4, pi / 3});
    CHECK_NOTHROW(s.validate());

    Scene bad = s;
    bad.emitters[0].orientation = {0, 0, -1.001};
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = s;
    bad.emitters[0].position = {1, 1, 3.0};
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = s;
    bad.emitters[0].lambertian_order = 0.5;
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = s;
    bad.detectors[0].fov = pi / 2 + 1e-6;
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = s;
    bad.detectors[0].area = 0.0;
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = s;
    bad.room.reflectivity[3] = 1.0;
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
    bad = s;
    bad.room.height_z = 0.0;
    CHECK(error_kind([&] { bad.validate(); }) == ErrorKind::invalid_argument);
}

TEST_CASE("half-power angle to Lambertian order", "[scene]")
{
    CHECK(Emitter::order_from_half_power_angle(pi / 3) == Approx(1.0).epsilon(1e-14));
    CHECK(Emitter::order_from_half_power_angle(35.0 * pi / 180) == Approx(3.4747).epsilon(1e-4));
}

TEST_CASE("FrequencyGrid", "[scene]")
{
    const FrequencyGrid g = FrequencyGrid::range(0, 250e6, 1e6);
    CHECK(g.size() == 251);
    CHECK(g.uniform());
    CHECK(g[0] == 0.0);
    CHECK(g[250] == 250e6);
    CHECK(g.nearest(5e6) == 5);
    CHECK(g.nearest(5.4e6) == 5);
    CHECK(g.nearest(5.5e6) == 5);
    CHECK(g.nearest(1e12) == 250);

    const FrequencyGrid l = FrequencyGrid::list({0, 1e6, 7e6});
    CHECK_FALSE(l.uniform());
    CHECK(l.nearest(5e6) == 2);
    CHECK_THROWS_AS(FrequencyGrid::list({0, 2e6, 2e6}), Error);
    CHECK_THROWS_AS(FrequencyGrid::list({-1, 2e6}), Error);
    CHECK_THROWS_AS(FrequencyGrid::range(0, 1e6, 0), Error);
}
