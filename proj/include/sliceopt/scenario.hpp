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
 * \file sliceopt/scenario.hpp
 *
 * \brief Random problem instances: one MEC plus a set of COINs behind a few
 *  access points, with uplink rates from a log-distance path-loss channel.
 */

#ifndef SLICEOPT_SCENARIO_HPP
#define SLICEOPT_SCENARIO_HPP

#include <sliceopt/model.hpp>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sliceopt {

struct Range
{
    double min{0};
    double max{0};

    bool operator==(const Range&) const = default;
};

enum class SplitMode
{
    equal,     ///< node capacity divided evenly across slices
    dirichlet, ///< seeded flat-Dirichlet fractions
};

struct ChannelParams
{
    double path_loss_exponent{3.0};
    double reference_loss_db{40.0};
    double noise_psd_w_per_hz{4e-21};

    bool operator==(const ChannelParams&) const = default;
};

/// Scenario parameters. Defaults reproduce the reference simulation setup;
/// values not fixed there (arrival rates, instruction counts, channel and
/// WD-AP geometry) are documented choices in the README.
struct ScenarioConfig
{
    std::size_t num_wds{6};
    std::size_t num_aps{3};
    std::size_t num_coins{8};
    std::size_t num_mecs{1};
    std::size_t num_slices{3};

    Range wd_gips_range{2.0, 45.4};
    Range wd_power_range{1e-6, 0.1};
    Range coin_gips_range{72.0, 768.0};
    double mec_gips{1285.0};
    Range task_size_range_bits{1.7 * 8e6, 10.0 * 8e6};
    std::vector<double> ap_bandwidths_hz{18e6, 27e6};

    // Carried for completeness; WD-node links do not enter the cost model.
    double coin_distance{2.0};
    double mec_distance{4.0};
    Range wd_ap_distance_range{1.0, 4.0};

    Range arrival_rate_range{0.1, 1.0};
    double instructions_per_megabyte{4.0};
    double slice_instruction_jitter{0.2};

    ChannelParams channel{};
    StabilityMode stability_mode{StabilityMode::node_total};
    SplitMode split_mode{SplitMode::equal};

    bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigInvalid naming the first offending field.
void validate_config(const ScenarioConfig& config);

/// Shannon rate over a log-distance path-loss link, in b/s.
double channel_rate(double bandwidth_hz, double tx_power_w, double distance, const ChannelParams& params);

/// Deterministic instance for (config, seed). Nodes are ordered COINs first,
/// then MECs.
SystemModel generate(const ScenarioConfig& config, std::uint64_t seed);

} // namespace sliceopt

#endif // SLICEOPT_SCENARIO_HPP
