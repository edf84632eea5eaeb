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


#include "lifi/diffuse.hpp"
#include "lifi/error.hpp"

#include "parallel.hpp"
#include "phasor.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace lifi
{
    std::size_t default_memory_budget()
    {
        constexpr std::size_t mib = 1024 * 1024;
        if (const char *env = std::getenv("LIFI_MEMORY_BUDGET_MB"))
        {
            char *end = nullptr;
            const unsigned long long mb = std::strtoull(env, &end, 10);
            if (end != env && *end == '\0' && mb > 0)
                return static_cast<std::size_t>(mb) * mib;
        }
        return 4096 * mib;
    }

    IntrinsicOperator build_intrinsic(std::shared_ptr<const PatchSet> patches, const DiffuseOptions &opt)
    {
        if (!patches || patches->empty())
            fail(ErrorKind::invalid_argument, "intrinsic operator needs a nonempty patch set");
        const std::size_t n = patches->size();
        const std::size_t need = IntrinsicOperator::memory_estimate(n);
        if (need > opt.memory_budget)
            fail(ErrorKind::capacity, "intrinsic matrices for N = " + std::to_string(n) + " patches need " +
                                          std::to_string(need / (1024 * 1024)) + " MiB, budget is " +
                                          std::to_string(opt.memory_budget / (1024 * 1024)) + " MiB");

        IntrinsicOperator op;
        op.patches_ = std::move(patches);
        op.n_ = n;
        op.gain_.assign(n * n, 0.0);
        op.delay_.assign(n * n, 0.0);
        const PatchSet &ps = *op.patches_;
        detail::parallel_for(n, opt.threads, [&](std::size_t begin, std::size_t end)
                             {
            for (std::size_t i = begin; i < end; ++i)
                for (std::size_t k = 0; k < n; ++k)
                {
                    if (i == k)
                        continue;
                    const Coupling c = patch_to_patch(ps, k, i);
                    op.gain_[i * n + k] = c.gain;
                    op.delay_[i * n + k] = c.delay;
                } });
        return op;
    }

    void IntrinsicOperator::apply(const FrequencyGrid &grid, const double *x_re, const double *x_im, double *y_re,
                                  double *y_im, unsigned threads) const
    {
        const std::size_t nf = grid.size();
        const auto rho = patches_->reflectivities();
        detail::parallel_for(n_, threads, [&](std::size_t begin, std::size_t end)
                             {
            std::vector<double> acc_re(nf), acc_im(nf);
            for (std::size_t i = begin; i < end; ++i)
            {
                std::fill(acc_re.begin(), acc_re.end(), 0.0);
                std::fill(acc_im.begin(), acc_im.end(), 0.0);
                if (rho[i] != 0.0)
                {
                    const double *g_row = gain_.data() + i * n_;
                    const double *t_row = delay_.data() + i * n_;
                    for (std::size_t k = 0; k < n_; ++k)
                    {
                        const double g = g_row[k];
                        if (g == 0.0)
                            continue;
                        const double *ur = x_re + k * nf, *ui = x_im + k * nf;
                        detail::for_each_phasor(grid, t_row[k], [&](std::size_t f, double pr, double pi_)
                                                {
                            acc_re[f] += g * (pr * ur[f] - pi_ * ui[f]);
                            acc_im[f] += g * (pr * ui[f] + pi_ * ur[f]); });
                    }
                }
                for (std::size_t f = 0; f < nf; ++f)
                {
                    y_re[i * nf + f] = rho[i] * acc_re[f];
                    y_im[i * nf + f] = rho[i] * acc_im[f];
                }
            } });
    }

    SourceField source_field(const IntrinsicOperator &op, const Emitter &tx, const FrequencyGrid &grid,
                             const DiffuseOptions &opt)
    {
        const PatchSet &ps = op.patches();
        if (!ps.room().contains_strictly(tx.position))
            fail(ErrorKind::scene_mismatch, "emitter '" + tx.id + "' does not belong to the operator's room");
        if (grid.empty())
            fail(ErrorKind::invalid_argument, "empty frequency grid");
        if (opt.bounces < 0)
            fail(ErrorKind::invalid_argument, "bounce count must be >= 0");

        const std::size_t n = op.size(), nf = grid.size();
        SourceField sf;
        sf.op_ = &op;
        sf.grid_ = grid;
        sf.n_ = n;
        sf.bounces_ = opt.bounces;
        sf.re_.assign(n * nf, 0.0);
        sf.im_.assign(n * nf, 0.0);
        if (opt.bounces == 0)
            return sf;

        // x_0 = G_rho t(f)
        const auto rho = ps.reflectivities();
        std::vector<double> x_re(n * nf), x_im(n * nf);
        for (std::size_t k = 0; k < n; ++k)
        {
            const Coupling c = emitter_to_patch(tx, ps, k);
            const double a = rho[k] * c.gain;
            double *xr = x_re.data() + k * nf, *xi = x_im.data() + k * nf;
            detail::for_each_phasor(grid, c.delay, [&](std::size_t f, double pr, double pi_)
                                    {
                xr[f] = a * pr;
                xi[f] = a * pi_; });
        }
        sf.re_ = x_re;
        sf.im_ = x_im;

        // x_{m+1} = G_rho H(f) x_m
        std::vector<double> y_re(n * nf), y_im(n * nf);
        for (int m = 1; m < opt.bounces; ++m)
        {
            op.apply(grid, x_re.data(), x_im.data(), y_re.data(), y_im.data(), opt.threads);
            for (std::size_t j = 0; j < n * nf; ++j)
            {
                sf.re_[j] += y_re[j];
                sf.im_[j] += y_im[j];
            }
            x_re.swap(y_re);
            x_im.swap(y_im);
        }
        return sf;
    }

    ReceiveVector receive_vector(const PatchSet &patches, const Detector &rx)
    {
        if (!patches.room().contains_strictly(rx.position))
            fail(ErrorKind::scene_mismatch, "detector '" + rx.id + "' does not belong to the patch set's room");
        ReceiveVector rv;
        rv.couplings.resize(patches.size());
        for (std::size_t k = 0; k < patches.size(); ++k)
            rv.couplings[k] = patch_to_detector(patches, k, rx);
        return rv;
    }

    ComplexSeries diffuse_response(const SourceField &field, const ReceiveVector &rv)
    {
        if (rv.couplings.size() != field.patch_count())
            fail(ErrorKind::scene_mismatch, "receive vector and source field come from different patch sets");
        const FrequencyGrid &grid = field.grid();
        const std::size_t nf = grid.size();
        std::vector<double> acc_re(nf, 0.0), acc_im(nf, 0.0);
        for (std::size_t k = 0; k < rv.couplings.size(); ++k)
        {
            const Coupling c = rv.couplings[k];
            if (c.gain == 0.0)
                continue;
            const double *vr = field.re() + k * nf, *vi = field.im() + k * nf;
            detail::for_each_phasor(grid, c.delay, [&](std::size_t f, double pr, double pi_)
                                    {
                acc_re[f] += c.gain * (pr * vr[f] - pi_ * vi[f]);
                acc_im[f] += c.gain * (pr * vi[f] + pi_ * vr[f]); });
        }
        ComplexSeries h(nf);
        for (std::size_t f = 0; f < nf; ++f)
            h[f] = {acc_re[f], acc_im[f]};
        return h;
    }

    ComplexSeries diffuse_response(const SourceField &field, const Detector &rx, const FrequencyGrid &grid)
    {
        if (!(grid == field.grid()))
            fail(ErrorKind::grid_mismatch, "detector grid differs from the source field grid");
        return diffuse_response(field, receive_vector(field.op().patches(), rx));
    }

    ComplexSeries brute_force_two_bounce(const PatchSet &patches, const Emitter &tx, const Detector &rx,
                                         const FrequencyGrid &grid)
    {
        const std::size_t n = patches.size();
        const auto rho = patches.reflectivities();
        std::vector<Coupling> t(n), r(n);
        for (std::size_t k = 0; k < n; ++k)
        {
            t[k] = emitter_to_patch(tx, patches, k);
            r[k] = patch_to_detector(patches, k, rx);
        }

        // Enumerate paths once: (gain, total delay) for every first- and second-order path.
        std::vector<Coupling> first, second;
        for (std::size_t k = 0; k < n; ++k)
        {
            if (t[k].gain == 0.0 || rho[k] == 0.0)
                continue;
            // Tx -> k -> Rx
            first.push_back({t[k].gain * rho[k] * r[k].gain, t[k].delay + r[k].delay});
            // Tx -> k -> j -> Rx
            for (std::size_t j = 0; j < n; ++j)
            {
                if (j == k || r[j].gain == 0.0)
                    continue;
                const Coupling g = patch_to_patch(patches, k, j);
                const double b = t[k].gain * rho[k] * g.gain * rho[j] * r[j].gain;
                if (b != 0.0)
                    second.push_back({b, t[k].delay + g.delay + r[j].delay});
            }
        }

        ComplexSeries h(grid.size());
        for (std::size_t f = 0; f < grid.size(); ++f)
        {
            std::complex<double> sum1{}, sum2{};
            for (const auto &p : first)
                sum1 += at_frequency(p, grid[f]);
            for (const auto &p : second)
                sum2 += at_frequency(p, grid[f]);
            h[f] = sum1 + sum2;
        }
        return h;
    }
}
