/*
 * Copyright 2026 The sliceopt Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/**
 * \file sliceopt/montecarlo.hpp
 *
 * \brief Batched experiments over random scenarios: gain of the optimal
 *  inter-slice split over the equal split, and offloader counts per slice.
 *
 * Run r of every (slices, wds) cell draws its scenario with `run_seed(seed, r)`,
 * so records are independent of the thread count and of the total number of
 * runs.
 */

#ifndef SLICEOPT_MONTECARLO_HPP
#define SLICEOPT_MONTECARLO_HPP

#include <sliceopt/scenario.hpp>
#include <sliceopt/solver.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace sliceopt {

enum class MethodChoice
{
    exhaustive,    ///< enumerate; SearchSpaceTooLarge propagates
    best_response, ///< always best-response
    automatic,     ///< enumerate when |Delta| <= max_space, else best-response
};

struct SweepOptions
{
    MethodChoice method{MethodChoice::automatic};
    std::uint64_t max_space{default_max_space};
    std::size_t max_rounds{100};
    std::size_t threads{1};
};

struct ConfidenceInterval
{
    double mean{0};
    double low{0};
    double high{0};
};

/// Student-t interval mean +/- t_{(1+level)/2, n-1} s / sqrt(n). Quantiles
/// come from Boost.Math. Throws TooFewSamples for fewer than two samples.
ConfidenceInterval confidence_interval(std::span<const double> samples, double level = 0.90);

struct GainRun
{
    std::size_t num_slices{0};
    std::size_t num_wds{0};
    std::size_t run{0};
    double gain{0};
    double optimal_cost{0};
    double equal_share_cost{0};
    SolveMethod method{SolveMethod::exhaustive};
    bool feasible{true};
};

struct GainRow
{
    std::size_t num_slices{0};
    std::size_t num_wds{0};
    double mean_gain{0};
    double ci_low{0};
    double ci_high{0};
    std::size_t runs{0};
    std::size_t infeasible_runs{0};
};

struct GainReport
{
    std::vector<GainRow> rows;
    std::vector<GainRun> runs; ///< grouped by cell, then run index
};

/// For every (N, I) cell and run, solves the instance once under each
/// inter-slice mode and records cost(equal share) / cost(optimal).
GainReport run_gain_sweep(const ScenarioConfig& base,
                          std::span<const std::size_t> slice_counts,
                          std::span<const std::size_t> wd_counts,
                          std::size_t runs,
                          const SweepOptions& options,
                          std::uint64_t seed);

struct OffloaderRun
{
    std::size_t num_slices{0};
    std::size_t num_wds{0};
    std::size_t run{0};
    std::vector<std::size_t> offloaders; ///< per slice
    SolveMethod method{SolveMethod::exhaustive};
};

struct OffloaderRow
{
    std::size_t num_slices{0};
    std::size_t num_wds{0};
    std::size_t slice{0};
    double mean_offloaders{0};
    double ci_low{0};
    double ci_high{0};
};

struct OffloaderReport
{
    std::vector<OffloaderRow> rows;
    std::vector<OffloaderRun> runs;
};

/// Counts, per run, the WDs whose optimal decision offloads into each slice
/// (optimal inter-slice split).
OffloaderReport run_offloader_sweep(const ScenarioConfig& base,
                                    std::span<const std::size_t> slice_counts,
                                    std::span<const std::size_t> wd_counts,
                                    std::size_t runs,
                                    const SweepOptions& options,
                                    std::uint64_t seed);

/// Solves one instance with the method picked by `options`.
Solution solve_with(const SystemModel& model,
                    InterMode inter_mode,
                    StabilityMode stability_mode,
                    const SweepOptions& options,
                    std::uint64_t seed);

} // namespace sliceopt

#endif // SLICEOPT_MONTECARLO_HPP
