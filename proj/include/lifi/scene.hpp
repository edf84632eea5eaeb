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

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lifi
{
    inline constexpr double speed_of_light = 299792458.0; // m/s
    inline constexpr double pi = 3.14159265358979323846;

    struct Vec3
    {
        double x = 0.0, y = 0.0, z = 0.0;

        friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
        friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
        friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
        friend bool operator==(const Vec3 &, const Vec3 &) = default;
    };

    inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
    inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

    // Room faces in patch-index order. Walls are named by the plane they lie in.
    enum class Face : int
    {
        floor = 0,   // z = 0
        ceiling = 1, // z = height
        wall_x0 = 2, // x = 0
        wall_x1 = 3, // x = length
        wall_y0 = 4, // y = 0
        wall_y1 = 5, // y = width
    };
    inline constexpr std::size_t face_count = 6;

    std::string_view face_name(Face face);
    Face face_from_name(std::string_view name); // throws invalid_argument on unknown names

    // Empty rectangular room with one Lambertian reflectivity per face.
    struct Room
    {
        double length_x = 0.0;
        double width_y = 0.0;
        double height_z = 0.0;
        std::array<double, face_count> reflectivity{};

        double surface_area() const { return 2.0 * (length_x * width_y + length_x * height_z + width_y * height_z); }
        double volume() const { return length_x * width_y * height_z; }
        double min_dimension() const;
        Vec3 center() const { return {0.5 * length_x, 0.5 * width_y, 0.5 * height_z}; }
        bool contains_strictly(Vec3 p) const;
        double face_reflectivity(Face f) const { return reflectivity[static_cast<std::size_t>(f)]; }

        void validate() const;
        friend bool operator==(const Room &, const Room &) = default;
    };

    struct Emitter
    {
        std::string id;
        Vec3 position;
        Vec3 orientation{0.0, 0.0, -1.0};
        double lambertian_order = 1.0;
        double optical_power = 1.0; // W

        // m = -ln 2 / ln cos(half_angle)
        static double order_from_half_power_angle(double half_angle_rad);

        friend bool operator==(const Emitter &, const Emitter &) = default;
    };

    struct Detector
    {
        std::string id;
        Vec3 position;
        Vec3 orientation{0.0, 0.0, 1.0};
        double area = 1e-4;      // m^2
        double fov = pi / 2.0;   // half-angle, rad

        friend bool operator==(const Detector &, const Detector &) = default;
    };

    // Per-patch reflectivity replacing the face value of cell (row, col) after tiling.
    struct PatchOverride
    {
        Face face = Face::floor;
        std::size_t row = 0;
        std::size_t col = 0;
        double reflectivity = 0.0;

        friend bool operator==(const PatchOverride &, const PatchOverride &) = default;
    };

    struct Scene
    {
        Room room;
        std::vector<Emitter> emitters;
        std::vector<Detector> detectors;
        std::vector<PatchOverride> patch_overrides;

        // Throws on any violated invariant (room, unit orientations, device placement).
        void validate() const;
        friend bool operator==(const Scene &, const Scene &) = default;
    };

    void validate_emitter(const Room &room, const Emitter &tx);
    void validate_detector(const Room &room, const Detector &rx);

    // Surface discretization of the room envelope, structure-of-arrays.
    // Patches are ordered face by face (Face order), row-major inside a face.
    class PatchSet
    {
    public:
        struct FaceTiling
        {
            std::size_t first = 0; // index of the face's first patch
            std::size_t rows = 0;  // cells along the face's first axis
            std::size_t cols = 0;  // cells along the face's second axis
        };

        const Room &room() const { return room_; }
        double resolution() const { return resolution_; }
        std::size_t size() const { return center_.size(); }
        bool empty() const { return center_.empty(); }

        std::span<const Vec3> centers() const { return center_; }
        std::span<const Vec3> normals() const { return normal_; }
        std::span<const double> areas() const { return area_; }
        std::span<const double> reflectivities() const { return reflectivity_; }
        std::span<const Face> faces() const { return face_; }
        const FaceTiling &tiling(Face f) const { return tiling_[static_cast<std::size_t>(f)]; }

        // Replace the reflectivity of cell (row, col) on a face.
        void override_reflectivity(Face f, std::size_t row, std::size_t col, double rho);

        double total_area() const;

        friend PatchSet discretize(const Room &room, double dx);

    private:
        Room room_;
        double resolution_ = 0.0;
        std::vector<Vec3> center_;
        std::vector<Vec3> normal_;
        std::vector<double> area_;
        std::vector<double> reflectivity_;
        std::vector<Face> face_;
        std::array<FaceTiling, face_count> tiling_{};
    };

    // Tile every face with a uniform grid, cell edges = edge / ceil(edge / dx).
    PatchSet discretize(const Room &room, double dx);

    // discretize() followed by the scene's patch overrides.
    PatchSet discretize(const Scene &scene, double dx);

    // Cells per edge for the tiling rule above (tolerates edge/dx landing a hair above an integer).
    std::size_t cells_along(double edge, double dx);

    // Time resolution matching a spatial patch resolution: dt = dx / c.
    double effective_time_resolution(double dx);

    // Area-weighted mean reflectivity.
    double average_reflectivity(const PatchSet &patches);

    // Sorted sample frequencies in Hz. Grids built with range() are flagged uniform, which enables
    // phasor stepping in the diffuse kernels.
    class FrequencyGrid
    {
    public:
        FrequencyGrid() = default;

        static FrequencyGrid range(double f_min, double f_max, double step);
        static FrequencyGrid list(std::vector<double> samples);

        std::size_t size() const { return samples_.size(); }
        bool empty() const { return samples_.empty(); }
        double operator[](std::size_t n) const { return samples_[n]; }
        std::span<const double> samples() const { return samples_; }
        bool uniform() const { return uniform_; }
        double step() const { return step_; }

        // Index of the sample closest to f (lower index on ties).
        std::size_t nearest(double f) const;

        friend bool operator==(const FrequencyGrid &, const FrequencyGrid &) = default;

    private:
        std::vector<double> samples_;
        bool uniform_ = false;
        double step_ = 0.0;
    };
}
