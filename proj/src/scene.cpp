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


#include "lifi/scene.hpp"
#include "lifi/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lifi
{
    namespace
    {
        constexpr std::array<std::string_view, face_count> face_names = {
            "floor", "ceiling", "wall_x0", "wall_x1", "wall_y0", "wall_y1"};

        std::string fmt_vec(Vec3 v)
        {
            std::ostringstream os;
            os << "(" << v.x << ", " << v.y << ", " << v.z << ")";
            return os.str();
        }

        void check_unit(Vec3 v, const std::string &what)
        {
            if (!(std::abs(norm(v) - 1.0) <= 1e-9))
                fail(ErrorKind::invalid_argument, what + " orientation " + fmt_vec(v) + " is not a unit vector");
        }
    }

    std::string_view face_name(Face face)
    {
        return face_names[static_cast<std::size_t>(face)];
    }

    Face face_from_name(std::string_view name)
    {
        for (std::size_t i = 0; i < face_count; ++i)
            if (face_names[i] == name)
                return static_cast<Face>(i);
        fail(ErrorKind::invalid_argument, "unknown face '" + std::string(name) + "'");
    }

    double Room::min_dimension() const
    {
        return std::min({length_x, width_y, height_z});
    }

    bool Room::contains_strictly(Vec3 p) const
    {
        return p.x > 0.0 && p.x < length_x && p.y > 0.0 && p.y < width_y && p.z > 0.0 && p.z < height_z;
    }

    void Room::validate() const
    {
        if (!(length_x > 0.0 && width_y > 0.0 && height_z > 0.0) ||
            !std::isfinite(length_x) || !std::isfinite(width_y) || !std::isfinite(height_z))
            fail(ErrorKind::invalid_argument, "room dimensions must be positive and finite");
        for (std::size_t i = 0; i < face_count; ++i)
            if (!(reflectivity[i] >= 0.0 && reflectivity[i] < 1.0))
                fail(ErrorKind::invalid_argument,
                     "reflectivity of " + std::string(face_names[i]) + " must lie in [0, 1)");
    }

    double Emitter::order_from_half_power_angle(double half_angle_rad)
    {
        if (!(half_angle_rad > 0.0 && half_angle_rad < pi / 2.0))
            fail(ErrorKind::invalid_argument, "half-power semi-angle must lie in (0, 90) degrees");
        return -std::log(2.0) / std::log(std::cos(half_angle_rad));
    }

    void validate_emitter(const Room &room, const Emitter &tx)
    {
        const std::string what = "emitter '" + tx.id + "'";
        check_unit(tx.orientation, what);
        if (!(tx.lambertian_order >= 1.0) || !std::isfinite(tx.lambertian_order))
            fail(ErrorKind::invalid_argument, what + " Lambertian order must be >= 1");
        if (!(tx.optical_power >= 0.0) || !std::isfinite(tx.optical_power))
            fail(ErrorKind::invalid_argument, what + " optical power must be >= 0");
        if (!room.contains_strictly(tx.position))
            fail(ErrorKind::invalid_argument, what + " position " + fmt_vec(tx.position) + " is not inside the room");
    }

    void validate_detector(const Room &room, const Detector &rx)
    {
        const std::string what = "detector '" + rx.id + "'";
        check_unit(rx.orientation, what);
        if (!(rx.area > 0.0) || !std::isfinite(rx.area))
            fail(ErrorKind::invalid_argument, what + " area must be > 0");
        if (!(rx.fov > 0.0 && rx.fov <= pi / 2.0))
            fail(ErrorKind::invalid_argument, what + " field of view must lie in (0, 90] degrees");
        if (!room.contains_strictly(rx.position))
            fail(ErrorKind::invalid_argument, what + " position " + fmt_vec(rx.position) + " is not inside the room");
    }

    void Scene::validate() const
    {
        room.validate();
        for (const auto &tx : emitters)
            validate_emitter(room, tx);
        for (const auto &rx : detectors)
            validate_detector(room, rx);
    }

    std::size_t cells_along(double edge, double dx)
    {
        // 4.5 / 0.25 must give 18, not 19.
        const double ratio = edge / dx;
        const double cells = std::ceil(ratio - 1e-9 * std::max(1.0, ratio));
        return static_cast<std::size_t>(std::max(1.0, cells));
    }

    PatchSet discretize(const Room &room, double dx)
    {
        room.validate();
        if (!(dx > 0.0) || !(dx <= room.min_dimension()))
            fail(ErrorKind::invalid_resolution, "patch resolution " + std::to_string(dx) +
                                                    " m must lie in (0, " + std::to_string(room.min_dimension()) + "]");

        PatchSet ps;
        ps.room_ = room;
        ps.resolution_ = dx;

        const double lx = room.length_x, ly = room.width_y, lz = room.height_z;
        const std::size_t nx = cells_along(lx, dx), ny = cells_along(ly, dx), nz = cells_along(lz, dx);
        const std::size_t total = 2 * (nx * ny + ny * nz + nx * nz);
        ps.center_.reserve(total);
        ps.normal_.reserve(total);
        ps.area_.reserve(total);
        ps.reflectivity_.reserve(total);
        ps.face_.reserve(total);

        // Each face: (rows along axis u, cols along axis v), point(u, v) maps into 3-D.
        auto tile = [&](Face f, std::size_t rows, double len_u, std::size_t cols, double len_v, Vec3 normal, auto point)
        {
            auto &t = ps.tiling_[static_cast<std::size_t>(f)];
            t.first = ps.center_.size();
            t.rows = rows;
            t.cols = cols;
            const double du = len_u / double(rows), dv = len_v / double(cols);
            const double rho = room.face_reflectivity(f);
            for (std::size_t r = 0; r < rows; ++r)
                for (std::size_t c = 0; c < cols; ++c)
                {
                    ps.center_.push_back(point((double(r) + 0.5) * du, (double(c) + 0.5) * dv));
                    ps.normal_.push_back(normal);
                    ps.area_.push_back(du * dv);
                    ps.reflectivity_.push_back(rho);
                    ps.face_.push_back(f);
                }
        };

        tile(Face::floor, nx, lx, ny, ly, {0, 0, 1}, [](double u, double v) { return Vec3{u, v, 0.0}; });
        tile(Face::ceiling, nx, lx, ny, ly, {0, 0, -1}, [lz](double u, double v) { return Vec3{u, v, lz}; });
        tile(Face::wall_x0, ny, ly, nz, lz, {1, 0, 0}, [](double u, double v) { return Vec3{0.0, u, v}; });
        tile(Face::wall_x1, ny, ly, nz, lz, {-1, 0, 0}, [lx](double u, double v) { return Vec3{lx, u, v}; });
        tile(Face::wall_y0, nx, lx, nz, lz, {0, 1, 0}, [](double u, double v) { return Vec3{u, 0.0, v}; });
        tile(Face::wall_y1, nx, lx, nz, lz, {0, -1, 0}, [ly](double u, double v) { return Vec3{u, ly, v}; });
        return ps;
    }

    PatchSet discretize(const Scene &scene, double dx)
    {
        PatchSet ps = discretize(scene.room, dx);
        for (const auto &o : scene.patch_overrides)
            ps.override_reflectivity(o.face, o.row, o.col, o.reflectivity);
        return ps;
    }

    void PatchSet::override_reflectivity(Face f, std::size_t row, std::size_t col, double rho)
    {
        const auto &t = tiling(f);
        if (row >= t.rows || col >= t.cols)
            fail(ErrorKind::invalid_argument, "patch (" + std::to_string(row) + ", " + std::to_string(col) +
                                                  ") is outside the " + std::to_string(t.rows) + "x" +
                                                  std::to_string(t.cols) + " tiling of " + std::string(face_name(f)));
        if (!(rho >= 0.0 && rho < 1.0))
            fail(ErrorKind::invalid_argument, "patch reflectivity must lie in [0, 1)");
        reflectivity_[t.first + row * t.cols + col] = rho;
    }

    double PatchSet::total_area() const
    {
        double sum = 0.0;
        for (double a : area_)
            sum += a;
        return sum;
    }

    double effective_time_resolution(double dx)
    {
        if (!(dx > 0.0))
            fail(ErrorKind::invalid_resolution, "patch resolution must be > 0");
        return dx / speed_of_light;
    }

    double average_reflectivity(const PatchSet &patches)
    {
        if (patches.empty())
            fail(ErrorKind::invalid_argument, "average reflectivity of an empty patch set");
        double weighted = 0.0, area = 0.0;
        const auto a = patches.areas();
        const auto rho = patches.reflectivities();
        for (std::size_t k = 0; k < patches.size(); ++k)
        {
            weighted += rho[k] * a[k];
            area += a[k];
        }
        return weighted / area;
    }

    FrequencyGrid FrequencyGrid::range(double f_min, double f_max, double step)
    {
        if (!(f_min >= 0.0) || !(f_max >= f_min) || !(step > 0.0) || !std::isfinite(f_max))
            fail(ErrorKind::invalid_argument, "frequency range needs 0 <= f_min <= f_max and step > 0");
        const double span = (f_max - f_min) / step;
        const auto count = static_cast<std::size_t>(std::floor(span + 1e-9 * std::max(1.0, span))) + 1;
        FrequencyGrid g;
        g.samples_.resize(count);
        for (std::size_t n = 0; n < count; ++n)
            g.samples_[n] = f_min + double(n) * step;
        g.uniform_ = count > 1;
        g.step_ = count > 1 ? step : 0.0;
        return g;
    }

    FrequencyGrid FrequencyGrid::list(std::vector<double> samples)
    {
        if (samples.empty())
            fail(ErrorKind::invalid_argument, "frequency list is empty");
        for (std::size_t n = 0; n < samples.size(); ++n)
        {
            if (!(samples[n] >= 0.0) || !std::isfinite(samples[n]))
                fail(ErrorKind::invalid_argument, "frequencies must be finite and >= 0");
            if (n > 0 && !(samples[n] > samples[n - 1]))
                fail(ErrorKind::invalid_argument, "frequencies must be strictly increasing");
        }
        FrequencyGrid g;
        g.samples_ = std::move(samples);
        return g;
    }

    std::size_t FrequencyGrid::nearest(double f) const
    {
        if (samples_.empty())
            fail(ErrorKind::invalid_argument, "empty frequency grid");
        auto it = std::lower_bound(samples_.begin(), samples_.end(), f);
        if (it == samples_.begin())
            return 0;
        if (it == samples_.end())
            return samples_.size() - 1;
        const auto hi = std::size_t(it - samples_.begin());
        return (samples_[hi] - f < f - samples_[hi - 1]) ? hi : hi - 1;
    }
}
