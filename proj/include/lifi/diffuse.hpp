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

#include "lifi/coupling.hpp"
#include "lifi/scene.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace lifi
{
    using ComplexSeries = std::vector<std::complex<double>>;

    // Memory budget for the intrinsic gain/delay matrices. LIFI_MEMORY_BUDGET_MB overrides the
    // 4096 MB default.
    std::size_t default_memory_budget();

    struct DiffuseOptions
    {
        int bounces = 2;          // reflection orders computed by the patch model
        unsigned threads = 1;     // worker threads for the per-row matrix products
        std::size_t memory_budget = default_memory_budget(); // bytes
    };

    // Patch-to-patch LOS couplings of one room discretization, stored once as two dense N x N
    // row-major matrices: gain(i, k) = L(k -> i) and delay(i, k) = d_ik / c. Both diagonals are zero.
    // Per-frequency transfer matrices are never materialized; the phasor is synthesized inside the
    // matrix-vector product. Memory: 2 N^2 doubles.
    class IntrinsicOperator
    {
    public:
        std::size_t size() const { return n_; }
        double gain(std::size_t i, std::size_t k) const { return gain_[i * n_ + k]; }
        double delay(std::size_t i, std::size_t k) const { return delay_[i * n_ + k]; }
        const PatchSet &patches() const { return *patches_; }
        const std::shared_ptr<const PatchSet> &shared_patches() const { return patches_; }
        std::size_t memory_bytes() const { return 2 * n_ * n_ * sizeof(double); }

        static std::size_t memory_estimate(std::size_t patch_count) { return 2 * patch_count * patch_count * sizeof(double); }

        friend IntrinsicOperator build_intrinsic(std::shared_ptr<const PatchSet> patches, const DiffuseOptions &opt);

        // y_i(f) = rho_i * sum_k gain(i, k) exp(-j 2 pi f delay(i, k)) x_k(f), k in index order.
        // x and y are [patch][frequency] planes of real and imaginary parts.
        void apply(const FrequencyGrid &grid, const double *x_re, const double *x_im, double *y_re, double *y_im,
                   unsigned threads) const;

    private:
        std::shared_ptr<const PatchSet> patches_;
        std::size_t n_ = 0;
        std::vector<double> gain_;
        std::vector<double> delay_;
    };

    IntrinsicOperator build_intrinsic(std::shared_ptr<const PatchSet> patches, const DiffuseOptions &opt = {});

    // Reflected field leaving each patch for one emitter:
    //   v(f) = sum_{m < bounces} G_rho (H(f) G_rho)^m t(f)
    // Independent of any detector.
    class SourceField
    {
    public:
        std::size_t patch_count() const { return n_; }
        const FrequencyGrid &grid() const { return grid_; }
        const IntrinsicOperator &op() const { return *op_; }
        int bounces() const { return bounces_; }
        std::complex<double> value(std::size_t k, std::size_t n) const
        {
            return {re_[k * grid_.size() + n], im_[k * grid_.size() + n]};
        }
        const double *re() const { return re_.data(); }
        const double *im() const { return im_.data(); }

        friend SourceField source_field(const IntrinsicOperator &op, const Emitter &tx, const FrequencyGrid &grid,
                                        const DiffuseOptions &opt);

    private:
        const IntrinsicOperator *op_ = nullptr;
        FrequencyGrid grid_;
        std::size_t n_ = 0;
        int bounces_ = 0;
        std::vector<double> re_, im_;
    };

    SourceField source_field(const IntrinsicOperator &op, const Emitter &tx, const FrequencyGrid &grid,
                             const DiffuseOptions &opt = {});

    // patch_to_detector couplings for every patch; one per detector pose, shared across emitters.
    struct ReceiveVector
    {
        std::vector<Coupling> couplings;
    };

    ReceiveVector receive_vector(const PatchSet &patches, const Detector &rx);

    // H_diff(f) = sum_k r_k(f) v_k(f), one dot product per frequency.
    ComplexSeries diffuse_response(const SourceField &field, const ReceiveVector &rv);
    ComplexSeries diffuse_response(const SourceField &field, const Detector &rx, const FrequencyGrid &grid);

    // Explicit path enumeration of the first- and second-order reflections. O(N^2) per frequency;
    // validation oracle only.
    ComplexSeries brute_force_two_bounce(const PatchSet &patches, const Emitter &tx, const Detector &rx,
                                         const FrequencyGrid &grid);
}
