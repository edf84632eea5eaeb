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


#include "lifi/scenario.hpp"
#include "lifi/error.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace lifi
{
    namespace
    {
        using json = nlohmann::ordered_json;

        constexpr double deg = pi / 180.0;

        [[noreturn]] void parse_fail(const std::string &path, const std::string &msg)
        {
            fail(ErrorKind::parse, (path.empty() ? std::string("/") : path) + ": " + msg);
        }

        // Object reader that remembers which keys were consumed so leftovers can be reported.
        class Reader
        {
        public:
            Reader(const json &j, std::string path) : j_(j), path_(std::move(path))
            {
                if (!j_.is_object())
                    parse_fail(path_, "expected an object");
            }

            bool has(const std::string &key) const { return j_.contains(key); }
            std::string at_path(const std::string &key) const { return path_ + "/" + key; }

            const json &raw(const std::string &key)
            {
                if (!j_.contains(key))
                    parse_fail(at_path(key), "missing required key");
                seen_.insert(key);
                return j_.at(key);
            }

            double number(const std::string &key)
            {
                const json &v = raw(key);
                if (!v.is_number())
                    parse_fail(at_path(key), "expected a number");
                return v.get<double>();
            }
            double number(const std::string &key, double fallback) { return has(key) ? number(key) : fallback; }

            bool boolean(const std::string &key, bool fallback)
            {
                if (!has(key))
                    return fallback;
                const json &v = raw(key);
                if (!v.is_boolean())
                    parse_fail(at_path(key), "expected true or false");
                return v.get<bool>();
            }

            std::string string(const std::string &key, const std::string &fallback)
            {
                if (!has(key))
                    return fallback;
                const json &v = raw(key);
                if (!v.is_string())
                    parse_fail(at_path(key), "expected a string");
                return v.get<std::string>();
            }

            Vec3 vec3(const std::string &key)
            {
                const json &v = raw(key);
                if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number())
                    parse_fail(at_path(key), "expected an array of three numbers");
                return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
            }

            std::size_t index(const std::string &key)
            {
                const json &v = raw(key);
                if (!v.is_number_unsigned())
                    parse_fail(at_path(key), "expected a non-negative integer");
                return v.get<std::size_t>();
            }

            void finish() const
            {
                for (auto it = j_.begin(); it != j_.end(); ++it)
                    if (!seen_.count(it.key()))
                        parse_fail(at_path(it.key()), "unknown key");
            }

        private:
            const json &j_;
            std::string path_;
            std::set<std::string> seen_;
        };

        // Run a value check and rethrow semantic errors as parse errors located at `path`.
        template <class Fn>
        void located(const std::string &path, Fn &&fn)
        {
            try
            {
                fn();
            }
            catch (const Error &e)
            {
                if (e.kind() == ErrorKind::parse)
                    throw;
                parse_fail(path, e.what());
            }
        }

        // Degrees that convert back to exactly `rad`, so serialize/parse is lossless.
        double to_degrees_exact(double rad)
        {
            double d = rad / deg;
            for (int i = 0; i < 8 && d * deg != rad; ++i)
                d = std::nextafter(d, d * deg < rad ? INFINITY : -INFINITY);
            return d;
        }

        json vec_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

        Room read_room(const json &j, Scene &scene)
        {
            Reader r(j, "/room");
            Room room;
            const json &size = r.raw("size_m");
            if (!size.is_array() || size.size() != 3)
                parse_fail("/room/size_m", "expected [length_x, width_y, height_z]");
            const Vec3 dims = r.vec3("size_m");
            room.length_x = dims.x;
            room.width_y = dims.y;
            room.height_z = dims.z;

            const json &refl = r.raw("reflectivity");
            auto check_rho = [](double rho, const std::string &path) {
                if (!(rho >= 0.0 && rho < 1.0))
                    parse_fail(path, "must lie in [0, 1)");
            };
            if (refl.is_number())
            {
                room.reflectivity.fill(refl.get<double>());
                check_rho(room.reflectivity[0], "/room/reflectivity");
            }
            else
            {
                Reader rr(refl, "/room/reflectivity");
                for (std::size_t f = 0; f < face_count; ++f)
                {
                    const std::string name(face_name(static_cast<Face>(f)));
                    room.reflectivity[f] = rr.number(name);
                    check_rho(room.reflectivity[f], rr.at_path(name));
                }
                rr.finish();
            }
            located("/room", [&] { room.validate(); });

            if (r.has("patch_overrides"))
            {
                const json &arr = r.raw("patch_overrides");
                if (!arr.is_array())
                    parse_fail("/room/patch_overrides", "expected an array");
                for (std::size_t i = 0; i < arr.size(); ++i)
                {
                    const std::string path = "/room/patch_overrides/" + std::to_string(i);
                    Reader o(arr[i], path);
                    PatchOverride po;
                    located(o.at_path("face"), [&] { po.face = face_from_name(o.string("face", "")); });
                    po.row = o.index("row");
                    po.col = o.index("col");
                    po.reflectivity = o.number("reflectivity");
                    if (!(po.reflectivity >= 0.0 && po.reflectivity < 1.0))
                        parse_fail(o.at_path("reflectivity"), "must lie in [0, 1)");
                    o.finish();
                    scene.patch_overrides.push_back(po);
                }
            }
            r.finish();
            return room;
        }

        Emitter read_emitter(const json &j, const std::string &path, std::size_t idx, const Room &room)
        {
            Reader r(j, path);
            Emitter tx;
            tx.id = r.string("id", "Tx" + std::to_string(idx + 1));
            tx.position = r.vec3("position");
            tx.orientation = r.vec3("orientation");
            const bool has_order = r.has("lambertian_order"), has_angle = r.has("half_power_angle_deg");
            if (has_order == has_angle)
                parse_fail(path, "give exactly one of lambertian_order and half_power_angle_deg");
            if (has_order)
                tx.lambertian_order = r.number("lambertian_order");
            else
            {
                const double a = r.number("half_power_angle_deg");
                located(r.at_path("half_power_angle_deg"),
                        [&] { tx.lambertian_order = Emitter::order_from_half_power_angle(a * deg); });
            }
            tx.optical_power = r.number("power_w", 1.0);
            r.finish();
            located(path, [&] { validate_emitter(room, tx); });
            return tx;
        }

        Detector read_detector(const json &j, const std::string &path, std::size_t idx, const Room &room)
        {
            Reader r(j, path);
            Detector rx;
            rx.id = r.string("id", "Rx" + std::to_string(idx + 1));
            rx.position = r.vec3("position");
            rx.orientation = r.vec3("orientation");
            rx.area = r.number("area_m2");
            rx.fov = r.number("fov_deg") * deg;
            r.finish();
            located(path, [&] { validate_detector(room, rx); });
            return rx;
        }

        void read_simulation(const json &j, Scenario &s)
        {
            Reader r(j, "/simulation");
            s.options.dx = r.number("dx_m");
            if (!(s.options.dx > 0.0 && s.options.dx <= s.scene.room.min_dimension()))
                parse_fail("/simulation/dx_m", "must lie in (0, smallest room dimension]");

            if (r.has("frequency"))
            {
                Reader f(r.raw("frequency"), "/simulation/frequency");
                if (f.has("list_hz"))
                {
                    const json &arr = f.raw("list_hz");
                    if (!arr.is_array())
                        parse_fail("/simulation/frequency/list_hz", "expected an array of numbers");
                    s.frequency.explicit_list = true;
                    for (const auto &v : arr)
                    {
                        if (!v.is_number())
                            parse_fail("/simulation/frequency/list_hz", "expected an array of numbers");
                        s.frequency.list.push_back(v.get<double>());
                    }
                }
                else
                {
                    s.frequency.f_min = f.number("f_min_hz", 0.0);
                    s.frequency.f_max = f.number("f_max_hz");
                    s.frequency.step = f.number("step_hz");
                }
                f.finish();
                located("/simulation/frequency", [&] { (void)s.frequency.grid(); });
            }

            s.options.bounces = static_cast<int>(r.has("bounces") ? r.index("bounces") : 2);
            s.options.tail = r.boolean("tail", true);
            s.options.tail_delay_offset = r.boolean("tail_delay_offset", false);
            if (r.has("rho1"))
            {
                const double v = r.number("rho1");
                if (!(v >= 0.0 && v < 1.0))
                    parse_fail("/simulation/rho1", "must lie in [0, 1)");
                s.options.rho1 = v;
            }
            s.query_frequency = r.number("query_frequency_hz", 5e6);
            located("/simulation/db_convention",
                    [&] { s.db_convention = db_convention_from_name(r.string("db_convention", "20log")); });
            located("/simulation/mse_mode", [&] { s.mse_mode = mse_mode_from_name(r.string("mse_mode", "complex")); });
            r.finish();
        }

        std::string line_col(std::string_view text, std::size_t byte)
        {
            std::size_t line = 1, col = 1;
            for (std::size_t i = 0; i < byte && i < text.size(); ++i)
            {
                if (text[i] == '\n')
                {
                    ++line;
                    col = 1;
                }
                else
                    ++col;
            }
            return "line " + std::to_string(line) + ", column " + std::to_string(col);
        }
    }

    FrequencyGrid FrequencySpec::grid() const
    {
        return explicit_list ? FrequencyGrid::list(list) : FrequencyGrid::range(f_min, f_max, step);
    }

    std::string_view db_convention_name(DbConvention c)
    {
        return c == DbConvention::amplitude_20log ? "20log" : "10log";
    }

    DbConvention db_convention_from_name(std::string_view name)
    {
        if (name == "20log")
            return DbConvention::amplitude_20log;
        if (name == "10log")
            return DbConvention::power_10log;
        fail(ErrorKind::invalid_argument, "dB convention must be 20log or 10log, got '" + std::string(name) + "'");
    }

    std::string_view mse_mode_name(MseMode m)
    {
        return m == MseMode::complex ? "complex" : "amplitude";
    }

    MseMode mse_mode_from_name(std::string_view name)
    {
        if (name == "complex")
            return MseMode::complex;
        if (name == "amplitude")
            return MseMode::amplitude;
        fail(ErrorKind::invalid_argument, "MSE mode must be complex or amplitude, got '" + std::string(name) + "'");
    }

    Scenario parse_scenario(std::string_view text)
    {
        json root;
        try
        {
            root = json::parse(text.begin(), text.end());
        }
        catch (const json::parse_error &e)
        {
            fail(ErrorKind::parse, "syntax error at " + line_col(text, e.byte) + ": " + e.what());
        }

        Scenario s;
        Reader r(root, "");
        s.name = r.string("name", "");
        s.description = r.string("description", "");
        s.scene.room = read_room(r.raw("room"), s.scene);

        for (const char *key : {"emitters", "detectors"})
        {
            const json &arr = r.raw(key);
            if (!arr.is_array())
                parse_fail(std::string("/") + key, "expected an array");
        }
        const json &ems = r.raw("emitters");
        for (std::size_t i = 0; i < ems.size(); ++i)
            s.scene.emitters.push_back(read_emitter(ems[i], "/emitters/" + std::to_string(i), i, s.scene.room));
        const json &dets = r.raw("detectors");
        for (std::size_t i = 0; i < dets.size(); ++i)
            s.scene.detectors.push_back(read_detector(dets[i], "/detectors/" + std::to_string(i), i, s.scene.room));

        read_simulation(r.raw("simulation"), s);
        r.finish();
        return s;
    }

    Scenario load_scenario(const std::string &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            fail(ErrorKind::io, "cannot open scenario file '" + path + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        try
        {
            return parse_scenario(ss.str());
        }
        catch (const Error &e)
        {
            fail(e.kind(), path + ": " + e.what());
        }
    }

    std::string serialize_scenario(const Scenario &s)
    {
        json root;
        if (!s.name.empty())
            root["name"] = s.name;
        if (!s.description.empty())
            root["description"] = s.description;

        json room;
        room["size_m"] = json::array({s.scene.room.length_x, s.scene.room.width_y, s.scene.room.height_z});
        json refl = json::object();
        for (std::size_t f = 0; f < face_count; ++f)
            refl[std::string(face_name(static_cast<Face>(f)))] = s.scene.room.reflectivity[f];
        room["reflectivity"] = refl;
        if (!s.scene.patch_overrides.empty())
        {
            json arr = json::array();
            for (const auto &o : s.scene.patch_overrides)
                arr.push_back({{"face", face_name(o.face)}, {"row", o.row}, {"col", o.col}, {"reflectivity", o.reflectivity}});
            room["patch_overrides"] = arr;
        }
        root["room"] = room;

        json ems = json::array();
        for (const auto &tx : s.scene.emitters)
            ems.push_back({{"id", tx.id},
                           {"position", vec_json(tx.position)},
                           {"orientation", vec_json(tx.orientation)},
                           {"lambertian_order", tx.lambertian_order},
                           {"power_w", tx.optical_power}});
        root["emitters"] = ems;

        json dets = json::array();
        for (const auto &rx : s.scene.detectors)
            dets.push_back({{"id", rx.id},
                            {"position", vec_json(rx.position)},
                            {"orientation", vec_json(rx.orientation)},
                            {"area_m2", rx.area},
                            {"fov_deg", to_degrees_exact(rx.fov)}});
        root["detectors"] = dets;

        json sim;
        sim["dx_m"] = s.options.dx;
        if (s.frequency.explicit_list)
            sim["frequency"] = {{"list_hz", s.frequency.list}};
        else
            sim["frequency"] = {{"f_min_hz", s.frequency.f_min}, {"f_max_hz", s.frequency.f_max}, {"step_hz", s.frequency.step}};
        sim["bounces"] = s.options.bounces;
        sim["tail"] = s.options.tail;
        sim["tail_delay_offset"] = s.options.tail_delay_offset;
        if (s.options.rho1)
            sim["rho1"] = *s.options.rho1;
        sim["query_frequency_hz"] = s.query_frequency;
        sim["db_convention"] = db_convention_name(s.db_convention);
        sim["mse_mode"] = mse_mode_name(s.mse_mode);
        root["simulation"] = sim;
        return root.dump(2) + "\n";
    }
}
