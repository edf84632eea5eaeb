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


// lifisim command-line front end. Talks to the simulator exclusively through the C API.

#include "lifi/lifi.h"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace
{
    enum ExitCode
    {
        exit_ok = 0,
        exit_input = 2,
        exit_capacity = 3,
        exit_check_failed = 4,
    };

    struct CliError
    {
        int code;
        std::string message;
    };

    [[noreturn]] void raise(int code, std::string message) { throw CliError{code, std::move(message)}; }

    void check(lifi_status st)
    {
        if (st == LIFI_OK)
            return;
        raise(st == LIFI_ERR_CAPACITY ? exit_capacity : exit_input,
              std::string(lifi_status_string(st)) + ": " + lifi_last_error());
    }

    template <class T, void (*Free)(T *)>
    struct Deleter
    {
        void operator()(T *p) const { Free(p); }
    };
    using ScenarioPtr = std::unique_ptr<lifi_scenario, Deleter<lifi_scenario, lifi_scenario_free>>;
    using ModelPtr = std::unique_ptr<lifi_model, Deleter<lifi_model, lifi_model_free>>;
    using ChannelPtr = std::unique_ptr<lifi_channel, Deleter<lifi_channel, lifi_channel_free>>;
    using TracePtr = std::unique_ptr<lifi_trace, Deleter<lifi_trace, lifi_trace_free>>;
    using HeatmapPtr = std::unique_ptr<lifi_heatmap, Deleter<lifi_heatmap, lifi_heatmap_free>>;

    // Fixed-precision numbers; negative zero is printed as zero so mirrored links compare equal.
    std::string num(double v, int precision)
    {
        if (v == 0.0)
            v = 0.0;
        if (std::isinf(v))
            return v < 0 ? "-inf" : "inf";
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*e", precision - 1, v);
        return buf;
    }

    double to_db(double mag, lifi_db_convention conv)
    {
        return (conv == LIFI_DB_20LOG ? 20.0 : 10.0) * std::log10(mag);
    }

    // Flags shared by every command that runs a simulation.
    struct SimFlags
    {
        std::optional<double> dx, fmax, fstep;
        std::optional<unsigned> threads;
        std::optional<std::string> db_convention, tail;
        std::optional<int> bounces;
        int precision = 10;

        void attach(CLI::App *cmd)
        {
            cmd->add_option("--dx", dx, "Patch resolution in m")->check(CLI::PositiveNumber);
            cmd->add_option("--fmax", fmax, "Highest frequency in Hz (grid starts at 0)")->check(CLI::NonNegativeNumber);
            cmd->add_option("--fstep", fstep, "Frequency step in Hz")->check(CLI::PositiveNumber);
            cmd->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
            cmd->add_option("--db-convention", db_convention, "20log or 10log")->check(CLI::IsMember({"20log", "10log"}));
            cmd->add_option("--tail", tail, "Integrating-sphere tail on/off")->check(CLI::IsMember({"on", "off"}));
            cmd->add_option("--bounces", bounces, "Reflection orders of the patch model")->check(CLI::NonNegativeNumber);
            cmd->add_option("--precision", precision, "Significant digits in CSV output")->check(CLI::Range(3, 17));
        }

        void apply(lifi_scenario *s) const
        {
            lifi_options o{};
            check(lifi_scenario_get_options(s, &o));
            if (dx)
                o.dx_m = *dx;
            if (fmax || fstep)
            {
                if (o.explicit_frequency_list)
                {
                    o.f_min_hz = 0.0;
                    o.f_max_hz = 250e6;
                    o.f_step_hz = 1e6;
                }
                if (fmax)
                    o.f_max_hz = *fmax;
                if (fstep)
                    o.f_step_hz = *fstep;
            }
            else if (o.explicit_frequency_list)
                o.f_step_hz = 0.0;
            if (threads)
                o.threads = *threads;
            if (db_convention)
                o.db_convention = *db_convention == "20log" ? LIFI_DB_20LOG : LIFI_DB_10LOG;
            if (tail)
                o.tail = *tail == "on";
            if (bounces)
                o.bounces = *bounces;
            check(lifi_scenario_set_options(s, &o));
        }
    };

    ScenarioPtr load(const std::string &path, const SimFlags &flags)
    {
        lifi_scenario *raw = nullptr;
        check(lifi_scenario_load(path.c_str(), &raw));
        ScenarioPtr s(raw);
        flags.apply(s.get());
        return s;
    }

    lifi_options options_of(const lifi_scenario *s)
    {
        lifi_options o{};
        check(lifi_scenario_get_options(s, &o));
        return o;
    }

    std::vector<lifi_device_info> emitters_of(const lifi_scenario *s)
    {
        std::vector<lifi_device_info> v(lifi_scenario_emitter_count(s));
        for (size_t i = 0; i < v.size(); ++i)
            check(lifi_scenario_emitter_info(s, i, &v[i]));
        return v;
    }

    std::vector<lifi_device_info> detectors_of(const lifi_scenario *s)
    {
        std::vector<lifi_device_info> v(lifi_scenario_detector_count(s));
        for (size_t i = 0; i < v.size(); ++i)
            check(lifi_scenario_detector_info(s, i, &v[i]));
        return v;
    }

    ModelPtr build_model(const lifi_scenario *s)
    {
        size_t patches = 0;
        check(lifi_scenario_patch_count(s, &patches));
        lifi_model *raw = nullptr;
        const lifi_status st = lifi_model_build(s, &raw);
        if (st == LIFI_ERR_CAPACITY)
            raise(exit_capacity, std::string(lifi_last_error()) + " (N = " + std::to_string(patches) +
                                     "; raise LIFI_MEMORY_BUDGET_MB or use a coarser --dx)");
        check(st);
        return ModelPtr(raw);
    }

    std::ofstream open_out(const fs::path &p)
    {
        if (p.has_parent_path())
            fs::create_directories(p.parent_path());
        std::ofstream out(p, std::ios::binary);
        if (!out)
            raise(exit_input, "cannot write '" + p.string() + "'");
        return out;
    }

    void write_header(std::ostream &out, const lifi_scenario *s, const lifi_model *m, const std::string &what)
    {
        const lifi_options o = options_of(s);
        out << "# lifisim " << lifi_version() << " " << what << "\n";
        out << "# dx_m=" << num(o.dx_m, 10) << " dt_s=" << num(lifi_effective_time_resolution(o.dx_m), 10)
            << " patches=" << lifi_model_patch_count(m) << "\n";
        out << "# frequencies=" << lifi_model_frequency_count(m) << " f_min_hz=" << num(o.f_min_hz, 10)
            << " f_max_hz=" << num(o.f_max_hz, 10) << " bounces=" << o.bounces << " tail=" << (o.tail ? "on" : "off")
            << "\n";
        out << "# units: freq_hz [Hz], re/im [dimensionless transfer, per W of emitted power], mag_db ["
            << (o.db_convention == LIFI_DB_20LOG ? "20log10|H|" : "10log10|H|") << "]\n";
    }

    const char *component_name(lifi_component c)
    {
        switch (c)
        {
        case LIFI_COMPONENT_LOS:
            return "los";
        case LIFI_COMPONENT_DIFF2:
            return "diff2";
        case LIFI_COMPONENT_TAIL:
            return "tail";
        case LIFI_COMPONENT_TOTAL:
            break;
        }
        return "total";
    }

    // ---- simulate ---------------------------------------------------------------------------

    int cmd_simulate(const std::string &scenario_path, const std::string &out_dir, const SimFlags &flags)
    {
        ScenarioPtr s = load(scenario_path, flags);
        const auto t0 = std::chrono::steady_clock::now();
        ModelPtr m = build_model(s.get());
        lifi_channel *raw = nullptr;
        check(lifi_model_evaluate(m.get(), &raw));
        ChannelPtr ch(raw);
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        const lifi_options o = options_of(s.get());
        const size_t nf = lifi_model_frequency_count(m.get());
        std::vector<double> f(nf), re(nf), im(nf);
        check(lifi_model_frequencies(m.get(), f.data(), nf));
        const auto txs = emitters_of(s.get());
        const auto rxs = detectors_of(s.get());

        fs::create_directories(out_dir);
        for (size_t r = 0; r < rxs.size(); ++r)
            for (size_t t = 0; t < txs.size(); ++t)
            {
                const fs::path p = fs::path(out_dir) / (std::string("link_") + rxs[r].id + "_" + txs[t].id + ".csv");
                std::ofstream out = open_out(p);
                write_header(out, s.get(), m.get(), std::string("link ") + rxs[r].id + " <- " + txs[t].id);
                out << "freq_hz,re,im,mag_db,component\n";
                for (lifi_component c : {LIFI_COMPONENT_LOS, LIFI_COMPONENT_DIFF2, LIFI_COMPONENT_TAIL, LIFI_COMPONENT_TOTAL})
                {
                    check(lifi_channel_response(ch.get(), r, t, c, re.data(), im.data(), nf));
                    for (size_t n = 0; n < nf; ++n)
                        out << num(f[n], flags.precision) << "," << num(re[n], flags.precision) << ","
                            << num(im[n], flags.precision) << ","
                            << num(to_db(std::hypot(re[n], im[n]), o.db_convention), flags.precision) << ","
                            << component_name(c) << "\n";
                }
            }

        std::ofstream meta = open_out(fs::path(out_dir) / "run_metadata.csv");
        meta << "key,value,unit\n";
        meta << "version," << lifi_version() << ",\n";
        meta << "scenario," << scenario_path << ",\n";
        meta << "emitters," << txs.size() << ",\n";
        meta << "detectors," << rxs.size() << ",\n";
        meta << "patches," << lifi_model_patch_count(m.get()) << ",\n";
        meta << "dx," << num(o.dx_m, 10) << ",m\n";
        meta << "dt," << num(lifi_effective_time_resolution(o.dx_m), 10) << ",s\n";
        meta << "frequencies," << nf << ",\n";
        meta << "f_min," << num(f.front(), 10) << ",Hz\n";
        meta << "f_max," << num(f.back(), 10) << ",Hz\n";
        meta << "bounces," << o.bounces << ",\n";
        meta << "tail," << (o.tail ? "on" : "off") << ",\n";
        meta << "mean_reflectivity," << num(lifi_model_mean_reflectivity(m.get()), 10) << ",\n";
        meta << "build_time," << num(lifi_model_build_seconds(m.get()), 4) << ",s\n";
        meta << "wall_time," << num(elapsed, 4) << ",s\n";

        std::cerr << "simulate: " << rxs.size() * txs.size() << " links, N = " << lifi_model_patch_count(m.get())
                  << ", " << nf << " frequencies, " << elapsed << " s\n";
        return exit_ok;
    }

    // ---- sweep ------------------------------------------------------------------------------

    std::vector<std::string> split(const std::string &line, char sep = ',')
    {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, sep))
        {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            out.push_back(b == std::string::npos ? std::string() : cell.substr(b, e - b + 1));
        }
        return out;
    }

    double parse_number(const std::string &text, const std::string &where)
    {
        if (text == "-inf")
            return -INFINITY;
        try
        {
            size_t used = 0;
            const double v = std::stod(text, &used);
            if (used == text.size())
                return v;
        }
        catch (const std::exception &)
        {
        }
        raise(exit_input, where + ": '" + text + "' is not a number");
    }

    // Header-driven CSV table; lines starting with '#' are comments.
    struct Table
    {
        std::vector<std::string> columns;
        std::vector<std::vector<std::string>> rows;
        std::string path;

        std::optional<size_t> column(const std::string &name) const
        {
            for (size_t i = 0; i < columns.size(); ++i)
                if (columns[i] == name)
                    return i;
            return std::nullopt;
        }
    };

    Table read_table(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            raise(exit_input, "cannot open '" + path + "'");
        Table t;
        t.path = path;
        std::string line;
        size_t lineno = 0;
        while (std::getline(in, line))
        {
            ++lineno;
            if (line.empty() || line[0] == '#' || line.find_first_not_of(" \t\r") == std::string::npos)
                continue;
            auto cells = split(line);
            if (t.columns.empty())
            {
                t.columns = std::move(cells);
                continue;
            }
            if (cells.size() != t.columns.size())
                raise(exit_input, path + ":" + std::to_string(lineno) + ": expected " + std::to_string(t.columns.size()) +
                                      " columns, found " + std::to_string(cells.size()));
            t.rows.push_back(std::move(cells));
        }
        if (t.columns.empty())
            raise(exit_input, path + ": no header row");
        return t;
    }

    std::vector<lifi_pose> read_poses(const std::string &path)
    {
        const Table t = read_table(path);
        const auto cx = t.column("x"), cy = t.column("y"), cz = t.column("z");
        if (!cx || !cy || !cz)
            raise(exit_input, path + ": pose file needs columns x, y, z (optional nx, ny, nz)");
        const auto nx = t.column("nx"), ny = t.column("ny"), nz = t.column("nz");
        std::vector<lifi_pose> poses;
        for (size_t i = 0; i < t.rows.size(); ++i)
        {
            const auto &r = t.rows[i];
            const std::string where = path + " pose " + std::to_string(i);
            lifi_pose p{{parse_number(r[*cx], where), parse_number(r[*cy], where), parse_number(r[*cz], where)},
                        {0.0, 0.0, 1.0}};
            if (nx && ny && nz)
            {
                p.orientation[0] = parse_number(r[*nx], where);
                p.orientation[1] = parse_number(r[*ny], where);
                p.orientation[2] = parse_number(r[*nz], where);
            }
            poses.push_back(p);
        }
        return poses;
    }

    int cmd_sweep(const std::string &scenario_path, const std::string &poses_path, std::optional<double> query_freq,
                  size_t detector, const std::string &out_dir, const SimFlags &flags)
    {
        ScenarioPtr s = load(scenario_path, flags);
        const std::vector<lifi_pose> poses = read_poses(poses_path);
        const lifi_options o = options_of(s.get());
        const double fq = query_freq.value_or(o.query_frequency_hz);

        ModelPtr m = build_model(s.get());
        lifi_trace *raw = nullptr;
        check(lifi_model_sweep(m.get(), detector, poses.data(), poses.size(), &raw));
        TracePtr tr(raw);

        const auto txs = emitters_of(s.get());
        const fs::path p = fs::path(out_dir) / "sweep.csv";
        std::ofstream out = open_out(p);
        write_header(out, s.get(), m.get(), "mobility sweep");
        out << "# query_frequency_hz=" << num(fq, 10) << " poses=" << poses.size() << "\n";
        out << "pose_idx,x,y,z,tx_id,distance_m,gain_db_at_query\n";
        for (size_t i = 0; i < poses.size(); ++i)
            for (size_t t = 0; t < txs.size(); ++t)
            {
                double d = 0.0, g = 0.0;
                check(lifi_trace_distance(tr.get(), i, t, &d));
                check(lifi_trace_gain_db(tr.get(), i, t, fq, o.db_convention, &g));
                out << i << "," << num(poses[i].position[0], flags.precision) << ","
                    << num(poses[i].position[1], flags.precision) << "," << num(poses[i].position[2], flags.precision)
                    << "," << txs[t].id << "," << num(d, flags.precision) << "," << num(g, flags.precision) << "\n";
            }

        double setup = 0.0, per_pose = 0.0;
        check(lifi_trace_timing(tr.get(), &setup, &per_pose));
        std::cerr << "sweep: " << poses.size() << " poses x " << txs.size() << " emitters; scene cache built once in "
                  << setup << " s, " << per_pose << " s per pose (" << (setup > 0 ? 100.0 * per_pose / setup : 0.0)
                  << "% of a cold build)\n";
        return exit_ok;
    }

    // ---- heatmap ----------------------------------------------------------------------------

    int cmd_heatmap(const std::string &scenario_path, double step, double height, const std::string &units,
                    std::optional<size_t> detector, const std::string &out_path, const SimFlags &flags)
    {
        ScenarioPtr s = load(scenario_path, flags);
        size_t tmpl = static_cast<size_t>(-1);
        if (detector)
            tmpl = *detector;
        else if (lifi_scenario_detector_count(s.get()) > 0)
            tmpl = 0;
        lifi_heatmap *raw = nullptr;
        check(lifi_heatmap_build(s.get(), tmpl, step, step, height, &raw));
        HeatmapPtr map(raw);
        size_t nx = 0, ny = 0;
        check(lifi_heatmap_dims(map.get(), &nx, &ny));
        std::vector<double> x(nx), y(ny), v(nx * ny);
        check(lifi_heatmap_axes(map.get(), x.data(), y.data()));
        check(lifi_heatmap_values(map.get(), v.data()));

        std::ofstream out = open_out(out_path);
        out << "# lifisim " << lifi_version() << " DC heat map, LOS only, detector facing up at z = " << num(height, 6)
            << " m\n";
        out << "# units: " << (units == "db" ? "dBW (10log10 of received optical power in W)" : "W") << "; rows y [m], columns x [m]\n";
        out << "y\\x";
        for (double xi : x)
            out << "," << num(xi, flags.precision);
        out << "\n";
        for (size_t j = 0; j < ny; ++j)
        {
            out << num(y[j], flags.precision);
            for (size_t i = 0; i < nx; ++i)
            {
                const double w = v[j * nx + i];
                out << "," << num(units == "db" ? 10.0 * std::log10(w) : w, flags.precision);
            }
            out << "\n";
        }
        std::cerr << "heatmap: " << nx << " x " << ny << " points written to " << out_path << "\n";
        return exit_ok;
    }

    // ---- compare ----------------------------------------------------------------------------

    // One response read from CSV. `has_phase` is false for magnitude-only measurements.
    struct Response
    {
        std::vector<double> f, re, im;
        bool has_phase = true;
    };

    Response read_response(const std::string &path, const std::string &component)
    {
        const Table t = read_table(path);
        const auto cf = t.column("freq_hz");
        if (!cf)
            raise(exit_input, path + ": missing freq_hz column");
        const auto cre = t.column("re"), cim = t.column("im"), cdb = t.column("mag_db"), cmag = t.column("mag"),
                   ccomp = t.column("component");
        Response r;
        r.has_phase = cre && cim;
        if (!r.has_phase && !cdb && !cmag)
            raise(exit_input, path + ": need re/im, mag or mag_db columns");
        for (size_t i = 0; i < t.rows.size(); ++i)
        {
            const auto &row = t.rows[i];
            if (ccomp && row[*ccomp] != component)
                continue;
            const std::string where = path + " row " + std::to_string(i + 1);
            r.f.push_back(parse_number(row[*cf], where));
            if (r.has_phase)
            {
                r.re.push_back(parse_number(row[*cre], where));
                r.im.push_back(parse_number(row[*cim], where));
            }
            else
            {
                const double mag = cmag ? parse_number(row[*cmag], where)
                                        : std::pow(10.0, parse_number(row[*cdb], where) / 20.0);
                r.re.push_back(mag);
                r.im.push_back(0.0);
            }
        }
        if (r.f.empty())
            raise(exit_input, path + ": no samples for component '" + component + "'");
        return r;
    }

    double compare_pair(const std::string &sim_path, const std::string &meas_path, const std::string &component,
                        lifi_mse_mode mode)
    {
        Response sim = read_response(sim_path, component);
        Response meas = read_response(meas_path, component);
        if (sim.f.size() != meas.f.size())
            raise(exit_input, "grid mismatch: " + sim_path + " has " + std::to_string(sim.f.size()) + " samples, " +
                                  meas_path + " has " + std::to_string(meas.f.size()));
        for (size_t n = 0; n < sim.f.size(); ++n)
            if (std::abs(sim.f[n] - meas.f[n]) > 1e-9 * std::max(1.0, std::abs(meas.f[n])))
                raise(exit_input, "grid mismatch at sample " + std::to_string(n) + ": " + num(sim.f[n], 10) + " Hz vs " +
                                      num(meas.f[n], 10) + " Hz");
        if (!sim.has_phase || !meas.has_phase)
        {
            mode = LIFI_MSE_AMPLITUDE;
            for (Response *r : {&sim, &meas})
                for (size_t n = 0; n < r->re.size(); ++n)
                {
                    r->re[n] = std::hypot(r->re[n], r->im[n]);
                    r->im[n] = 0.0;
                }
        }
        double pct = 0.0;
        check(lifi_relative_mse(meas.re.data(), meas.im.data(), sim.re.data(), sim.im.data(), sim.f.size(), mode, &pct));
        return pct;
    }

    int cmd_compare(const std::string &sim, const std::string &meas, double threshold, const std::string &mode_name,
                    const std::string &component)
    {
        const lifi_mse_mode mode = mode_name == "amplitude" ? LIFI_MSE_AMPLITUDE : LIFI_MSE_COMPLEX;
        std::vector<std::pair<std::string, std::pair<std::string, std::string>>> pairs;
        if (fs::is_directory(sim) != fs::is_directory(meas))
            raise(exit_input, "compare expects two files or two directories");
        if (fs::is_directory(sim))
        {
            std::map<std::string, std::string> found;
            for (const auto &e : fs::directory_iterator(meas))
                if (e.path().extension() == ".csv" && e.path().filename().string().rfind("link_", 0) == 0)
                    found[e.path().filename().string()] = e.path().string();
            for (const auto &[name, mpath] : found)
            {
                const fs::path spath = fs::path(sim) / name;
                if (!fs::exists(spath))
                    raise(exit_input, "no simulated counterpart for " + mpath);
                pairs.push_back({name, {spath.string(), mpath}});
            }
            if (pairs.empty())
                raise(exit_input, "no link_*.csv files in " + meas);
        }
        else
            pairs.push_back({fs::path(meas).filename().string(), {sim, meas}});

        bool all_pass = true;
        std::cout << "link,mse_percent,threshold_percent,result\n";
        for (const auto &[name, paths] : pairs)
        {
            const double pct = compare_pair(paths.first, paths.second, component, mode);
            const bool pass = pct < threshold;
            all_pass = all_pass && pass;
            std::cout << name << "," << num(pct, 6) << "," << num(threshold, 6) << "," << (pass ? "PASS" : "FAIL") << "\n";
        }
        return all_pass ? exit_ok : exit_check_failed;
    }

    // ---- oracle -----------------------------------------------------------------------------

    int cmd_oracle(const std::string &scenario_path, size_t max_patches, const std::string &fault, double tolerance,
                   const SimFlags &flags)
    {
        ScenarioPtr s = load(scenario_path, flags);
        double dev = 0.0, dx = 0.0;
        size_t n = 0;
        check(lifi_oracle_check(s.get(), max_patches, fault == "drop-second-bounce", &dev, &n, &dx));
        const bool pass = dev <= tolerance;
        std::cout << "oracle: N = " << n << " (dx = " << num(dx, 6) << " m), max relative deviation = " << num(dev, 4)
                  << ", tolerance = " << num(tolerance, 3) << " -> " << (pass ? "PASS" : "FAIL") << "\n";
        return pass ? exit_ok : exit_check_failed;
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"lifisim: frequency-domain multi-link LiFi channel simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(lifi_version()));

    SimFlags flags;
    std::string scenario, out, poses, units = "watts", meas, sim, mode = "complex", component = "total",
                                      fault = "none";
    std::optional<double> query;
    std::optional<size_t> heat_detector;
    size_t sweep_detector = 0, max_patches = 150;
    double step = 0.1, height = 1.0, threshold = 5.0, tolerance = 1e-8;

    auto *simulate = app.add_subcommand("simulate", "Per-link transfer functions of a scenario");
    simulate->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    simulate->add_option("-o,--out", out, "Output directory")->required();
    flags.attach(simulate);

    auto *sweep = app.add_subcommand("sweep", "Move one detector through a list of poses");
    sweep->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    sweep->add_option("poses", poses, "Pose CSV (x,y,z[,nx,ny,nz])")->required()->check(CLI::ExistingFile);
    sweep->add_option("--freq", query, "Query frequency in Hz (default: scenario value)")->check(CLI::NonNegativeNumber);
    sweep->add_option("--detector", sweep_detector, "Index of the moving detector");
    sweep->add_option("-o,--out", out, "Output directory")->required();
    flags.attach(sweep);

    auto *heatmap = app.add_subcommand("heatmap", "Received DC power over a horizontal plane");
    heatmap->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    heatmap->add_option("--step", step, "Grid step in m")->check(CLI::PositiveNumber);
    heatmap->add_option("--height", height, "Detector height in m")->check(CLI::PositiveNumber);
    heatmap->add_option("--units", units, "watts or db")->check(CLI::IsMember({"watts", "db"}));
    heatmap->add_option("--detector", heat_detector, "Detector used as template (area, FOV)");
    heatmap->add_option("-o,--out", out, "Output CSV file")->required();
    flags.attach(heatmap);

    auto *compare = app.add_subcommand("compare", "Relative MSE between simulated and measured responses");
    compare->add_option("sim", sim, "Simulated link CSV or directory")->required()->check(CLI::ExistingPath);
    compare->add_option("meas", meas, "Measured link CSV or directory")->required()->check(CLI::ExistingPath);
    compare->add_option("--threshold", threshold, "Pass threshold in percent")->check(CLI::NonNegativeNumber);
    compare->add_option("--mode", mode, "complex or amplitude")->check(CLI::IsMember({"complex", "amplitude"}));
    compare->add_option("--component", component, "Component rows to compare")
        ->check(CLI::IsMember({"los", "diff2", "tail", "total"}));

    auto *oracle = app.add_subcommand("oracle", "Check the patch model against explicit path enumeration");
    oracle->add_option("scenario", scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    oracle->add_option("--max-patches", max_patches, "Coarsen until N is at most this")->check(CLI::PositiveNumber);
    oracle->add_option("--inject-fault", fault, "none or drop-second-bounce")
        ->check(CLI::IsMember({"none", "drop-second-bounce"}));
    oracle->add_option("--tolerance", tolerance, "Maximum relative deviation")->check(CLI::PositiveNumber);
    flags.attach(oracle);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_input;
    }

    try
    {
        if (*simulate)
            return cmd_simulate(scenario, out, flags);
        if (*sweep)
            return cmd_sweep(scenario, poses, query, sweep_detector, out, flags);
        if (*heatmap)
            return cmd_heatmap(scenario, step, height, units, heat_detector, out, flags);
        if (*compare)
            return cmd_compare(sim, meas, threshold, mode, component);
        if (*oracle)
            return cmd_oracle(scenario, max_patches, fault, tolerance, flags);
    }
    catch (const CliError &e)
    {
        std::cerr << "lifisim: " << e.message << "\n";
        return e.code;
    }
    catch (const std::exception &e)
    {
        std::cerr << "lifisim: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
