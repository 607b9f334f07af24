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

#include <sliceopt/scenario.hpp>

#include <sliceopt/random.hpp>

#include <cmath>
#include <string>

namespace sliceopt {

namespace {

void check_range(const Range& r, const char* name)
{
    if (!(r.min > 0.0) || !(r.max >= r.min) || !std::isfinite(r.max))
    {
        throw ConfigInvalid(std::string(name) + ": need 0 < min <= max");
    }
}

void check_positive(double v, const char* name)
{
    if (!(v > 0.0) || !std::isfinite(v))
    {
        throw ConfigInvalid(std::string(name) + ": must be a finite positive number");
    }
}

void check_count(std::size_t v, const char* name)
{
    if (v == 0)
    {
        throw ConfigInvalid(std::string(name) + ": must be at least 1");
    }
}

} // namespace

void validate_config(const ScenarioConfig& c)
{
    check_count(c.num_wds, "num_wds");
    check_count(c.num_aps, "num_aps");
    check_count(c.num_slices, "num_slices");
    if (c.num_coins + c.num_mecs == 0)
    {
        throw ConfigInvalid("num_coins: num_coins + num_mecs must be at least 1");
    }
    check_range(c.wd_gips_range, "wd_gips_range");
    check_range(c.wd_power_range, "wd_power_range");
    check_range(c.coin_gips_range, "coin_gips_range");
    check_positive(c.mec_gips, "mec_gips");
    check_range(c.task_size_range_bits, "task_size_range");
    if (c.ap_bandwidths_hz.empty())
    {
        throw ConfigInvalid("ap_bandwidths: needs at least one value");
    }
    for (double b : c.ap_bandwidths_hz)
    {
        check_positive(b, "ap_bandwidths");
    }
    check_positive(c.coin_distance, "coin_distance");
    check_positive(c.mec_distance, "mec_distance");
    check_range(c.wd_ap_distance_range, "wd_ap_distance_range");
    check_range(c.arrival_rate_range, "arrival_rate_range");
    check_positive(c.instructions_per_megabyte, "instructions_per_megabyte");
    if (!(c.slice_instruction_jitter >= 0.0 && c.slice_instruction_jitter < 1.0))
    {
        throw ConfigInvalid("slice_instruction_jitter: must lie in [0, 1)");
    }
    check_positive(c.channel.path_loss_exponent, "path_loss_exponent");
    if (!std::isfinite(c.channel.reference_loss_db))
    {
        throw ConfigInvalid("reference_loss_db: must be finite");
    }
    check_positive(c.channel.noise_psd_w_per_hz, "noise_psd_w_per_hz");
}

double channel_rate(double bandwidth_hz, double tx_power_w, double distance, const ChannelParams& params)
{
    const double loss_db = params.reference_loss_db + 10.0 * params.path_loss_exponent * std::log10(distance);
    const double received = tx_power_w * std::pow(10.0, -loss_db / 10.0);
    const double snr = received / (params.noise_psd_w_per_hz * bandwidth_hz);
    return bandwidth_hz * std::log2(1.0 + snr);
}

SystemModel generate(const ScenarioConfig& config, std::uint64_t seed)
{
    validate_config(config);
    const std::size_t num_slices = config.num_slices;
    const std::size_t num_nodes = config.num_coins + config.num_mecs;

    std::vector<WirelessDevice> wds(config.num_wds);
    for (std::size_t i = 0; i < config.num_wds; ++i)
    {
        RandomStream rng(seed, stream_wd, i);
        auto& wd = wds[i];
        wd.id = i;
        wd.local_capability = rng.uniform(config.wd_gips_range.min, config.wd_gips_range.max);
        wd.tx_power = rng.uniform(config.wd_power_range.min, config.wd_power_range.max);
        wd.task_size = rng.uniform(config.task_size_range_bits.min, config.task_size_range_bits.max);
        wd.arrival_rate = rng.uniform(config.arrival_rate_range.min, config.arrival_rate_range.max);
        wd.local_instructions = config.instructions_per_megabyte * (wd.task_size / 8e6);
        wd.slice_instructions.resize(num_slices);
        const double jitter = config.slice_instruction_jitter;
        for (std::size_t n = 0; n < num_slices; ++n)
        {
            wd.slice_instructions[n] = wd.local_instructions * rng.uniform(1.0 - jitter, 1.0 + jitter);
        }
    }

    std::vector<AccessPoint> aps(config.num_aps);
    for (std::size_t a = 0; a < config.num_aps; ++a)
    {
        RandomStream rng(seed, stream_ap, a);
        aps[a].id = a;
        aps[a].bandwidth = config.ap_bandwidths_hz[rng.below(config.ap_bandwidths_hz.size())];
        aps[a].rates.resize(config.num_wds);
    }
    for (std::size_t i = 0; i < config.num_wds; ++i)
    {
        RandomStream rng(seed, stream_link, i);
        for (std::size_t a = 0; a < config.num_aps; ++a)
        {
            const double distance = rng.uniform(config.wd_ap_distance_range.min, config.wd_ap_distance_range.max);
            aps[a].rates[i] = channel_rate(aps[a].bandwidth, wds[i].tx_power, distance, config.channel);
        }
    }

    std::vector<EdgeNode> nodes(num_nodes);
    for (std::size_t j = 0; j < num_nodes; ++j)
    {
        RandomStream rng(seed, stream_node, j);
        auto& node = nodes[j];
        node.id = j;
        const bool coin = j < config.num_coins;
        node.kind = coin ? NodeKind::coin : NodeKind::mec;
        const double total = coin ? rng.uniform(config.coin_gips_range.min, config.coin_gips_range.max)
                                  : config.mec_gips;

        std::vector<double> fractions(num_slices, 1.0 / static_cast<double>(num_slices));
        if (config.split_mode == SplitMode::dirichlet && num_slices > 1)
        {
            // Flat Dirichlet: normalised unit exponentials.
            double sum = 0.0;
            for (auto& f : fractions)
            {
                f = -std::log1p(-rng.unit());
                sum += f;
            }
            for (auto& f : fractions)
            {
                f /= sum;
            }
        }
        node.slice_capability.resize(num_slices);
        for (std::size_t n = 0; n < num_slices; ++n)
        {
            node.slice_capability[n] = num_slices == 1 ? total : total * fractions[n];
        }
    }

    return SystemModel(std::move(wds), std::move(aps), std::move(nodes), num_slices);
}

} // namespace sliceopt
