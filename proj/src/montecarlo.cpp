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

#include <sliceopt/montecarlo.hpp>
#include <sliceopt/random.hpp>

#include <boost/math/distributions/students_t.hpp>

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace sliceopt {

ConfidenceInterval confidence_interval(std::span<const double> samples, double level)
{
    if (samples.size() < 2)
    {
        throw TooFewSamples("confidence interval needs at least 2 samples, got " + std::to_string(samples.size()));
    }
    const double n = static_cast<double>(samples.size());
    double sum = 0.0;
    for (double x : samples)
    {
        sum += x;
    }
    const double mean = sum / n;
    double squares = 0.0;
    for (double x : samples)
    {
        squares += (x - mean) * (x - mean);
    }
    const double sd = std::sqrt(squares / (n - 1.0));
    const boost::math::students_t dist(n - 1.0);
    const double t = boost::math::quantile(dist, 0.5 + level / 2.0);
    const double half = t * sd / std::sqrt(n);
    return {mean, mean - half, mean + half};
}

Solution solve_with(const SystemModel& model,
                    InterMode inter_mode,
                    StabilityMode stability_mode,
                    const SweepOptions& options,
                    std::uint64_t seed)
{
    const bool enumerate = options.method == MethodChoice::exhaustive
                           || (options.method == MethodChoice::automatic
                               && search_space_size(model) <= options.max_space);
    if (enumerate)
    {
        return exhaustive_solve(model, inter_mode, stability_mode, options.max_space);
    }
    return best_response_solve(model, inter_mode, stability_mode, options.max_rounds, seed);
}

namespace {

/// Runs body(k) for k in [0, count) on up to `threads` workers. Each k
/// writes only its own slot, so results do not depend on scheduling. The
/// first exception is rethrown after all workers join.
template <typename Body>
void parallel_for(std::size_t count, std::size_t threads, Body body)
{
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1)
    {
        for (std::size_t k = 0; k < count; ++k)
        {
            body(k);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
    {
        pool.emplace_back([&] {
            for (std::size_t k = next++; k < count; k = next++)
            {
                try
                {
                    body(k);
                }
                catch (...)
                {
                    std::lock_guard lock(error_mutex);
                    if (!error)
                    {
                        error = std::current_exception();
                    }
                }
            }
        });
    }
    for (auto& worker : pool)
    {
        worker.join();
    }
    if (error)
    {
        std::rethrow_exception(error);
    }
}

void check_sweep(std::span<const std::size_t> slice_counts, std::span<const std::size_t> wd_counts, std::size_t runs)
{
    if (slice_counts.empty() || wd_counts.empty())
    {
        throw ConfigInvalid("sweep needs non-empty slice and wd lists");
    }
    if (runs < 2)
    {
        throw ConfigInvalid("runs: a sweep needs at least 2 runs");
    }
}

} // namespace

GainReport run_gain_sweep(const ScenarioConfig& base,
                          std::span<const std::size_t> slice_counts,
                          std::span<const std::size_t> wd_counts,
                          std::size_t runs,
                          const SweepOptions& options,
                          std::uint64_t seed)
{
    check_sweep(slice_counts, wd_counts, runs);
    validate_config(base);

    GainReport report;
    for (std::size_t num_slices : slice_counts)
    {
        for (std::size_t num_wds : wd_counts)
        {
            ScenarioConfig config = base;
            config.num_slices = num_slices;
            config.num_wds = num_wds;
            validate_config(config);

            std::vector<GainRun> cell(runs);
            parallel_for(runs, options.threads, [&](std::size_t r) {
                const std::uint64_t run_seed = sliceopt::run_seed(seed, r);
                const auto model = generate(config, run_seed);
                const auto equal = solve_with(model, InterMode::equal_share, config.stability_mode, options, run_seed);
                Solution optimal;
                if (equal.method == SolveMethod::exhaustive)
                {
                    optimal = exhaustive_solve(model, InterMode::optimal, config.stability_mode, options.max_space);
                }
                else
                {
                    // Warm start from the equal-share optimum: the optimal split
                    // can only improve on that vector.
                    optimal = best_response_solve(model, InterMode::optimal, config.stability_mode,
                                                  options.max_rounds, run_seed, equal.delta);
                }
                auto& rec = cell[r];
                rec.num_slices = num_slices;
                rec.num_wds = num_wds;
                rec.run = r;
                rec.method = equal.method;
                rec.optimal_cost = optimal.cost.system_cost;
                rec.equal_share_cost = equal.cost.system_cost;
                rec.gain = rec.equal_share_cost / rec.optimal_cost;
                rec.feasible = std::isfinite(rec.gain) && rec.optimal_cost > 0.0;
            });

            std::vector<double> gains;
            GainRow row;
            row.num_slices = num_slices;
            row.num_wds = num_wds;
            for (const auto& rec : cell)
            {
                if (rec.feasible)
                {
                    gains.push_back(rec.gain);
                }
                else
                {
                    ++row.infeasible_runs;
                }
            }
            row.runs = gains.size();
            if (gains.size() >= 2)
            {
                const auto ci = confidence_interval(gains);
                row.mean_gain = ci.mean;
                row.ci_low = ci.low;
                row.ci_high = ci.high;
            }
            else
            {
                row.mean_gain = row.ci_low = row.ci_high = gains.empty() ? std::nan("") : gains.front();
            }
            report.rows.push_back(row);
            report.runs.insert(report.runs.end(), cell.begin(), cell.end());
        }
    }
    return report;
}

OffloaderReport run_offloader_sweep(const ScenarioConfig& base,
                                    std::span<const std::size_t> slice_counts,
                                    std::span<const std::size_t> wd_counts,
                                    std::size_t runs,
                                    const SweepOptions& options,
                                    std::uint64_t seed)
{
    check_sweep(slice_counts, wd_counts, runs);
    validate_config(base);

    OffloaderReport report;
    for (std::size_t num_slices : slice_counts)
    {
        for (std::size_t num_wds : wd_counts)
        {
            ScenarioConfig config = base;
            config.num_slices = num_slices;
            config.num_wds = num_wds;
            validate_config(config);

            std::vector<OffloaderRun> cell(runs);
            parallel_for(runs, options.threads, [&](std::size_t r) {
                const std::uint64_t run_seed = sliceopt::run_seed(seed, r);
                const auto model = generate(config, run_seed);
                const auto solution = solve_with(model, InterMode::optimal, config.stability_mode, options, run_seed);
                auto& rec = cell[r];
                rec.num_slices = num_slices;
                rec.num_wds = num_wds;
                rec.run = r;
                rec.method = solution.method;
                rec.offloaders.assign(num_slices, 0);
                for (const auto& d : solution.delta)
                {
                    if (d.is_offload())
                    {
                        ++rec.offloaders[d.target().slice];
                    }
                }
            });

            for (std::size_t n = 0; n < num_slices; ++n)
            {
                std::vector<double> counts;
                counts.reserve(runs);
                for (const auto& rec : cell)
                {
                    counts.push_back(static_cast<double>(rec.offloaders[n]));
                }
                const auto ci = confidence_interval(counts);
                report.rows.push_back({num_slices, num_wds, n, ci.mean, ci.low, ci.high});
            }
            report.runs.insert(report.runs.end(), cell.begin(), cell.end());
        }
    }
    return report;
}

} // namespace sliceopt
