#include "fixtures.hpp"

#include <sliceopt/errors.hpp>
#include <sliceopt/random.hpp>
#include <sliceopt/scenario.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

using namespace sliceopt;
using namespace sliceopt::testing;

namespace {

double snr_from_rate(double rate, double bandwidth)
{
    return std::exp2(rate / bandwidth) - 1.0;
}

bool within(double x, Range r)
{
    return x >= r.min && x <= r.max;
}

double total_capability(const EdgeNode& node)
{
    return std::accumulate(node.slice_capability.begin(), node.slice_capability.end(), 0.0);
}

std::string config_error(const ScenarioConfig& c)
{
    try
    {
        validate_config(c);
    }
    catch (const ConfigInvalid& e)
    {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("channel rate at unit SNR equals the bandwidth")
{
    ChannelParams p;
    p.reference_loss_db = 0.0;
    p.noise_psd_w_per_hz = 4e-21;
    const double bandwidth = 18e6;
    const double power = p.noise_psd_w_per_hz * bandwidth;
    CHECK(channel_rate(bandwidth, power, 1.0, p) == doctest::Approx(18e6).epsilon(1e-12));
}

TEST_CASE("received power falls with the path-loss exponent")
{
    ChannelParams p;
    p.path_loss_exponent = 2.0;
    const double b = 18e6;
    const double near = snr_from_rate(channel_rate(b, 0.05, 1.5, p), b);
    const double far = snr_from_rate(channel_rate(b, 0.05, 15.0, p), b);
    CHECK(far / near == doctest::Approx(1e-2).epsilon(1e-8));
}

TEST_CASE("channel rate grows strictly with transmit power")
{
    const ChannelParams p;
    double previous = 0.0;
    for (double power = 1e-6; power <= 0.1; power *= 1.5)
    {
        const double r = channel_rate(27e6, power, 2.5, p);
        CHECK(r > previous);
        previous = r;
    }
}

TEST_CASE("generate is a pure function of config and seed")
{
    const ScenarioConfig c;
    CHECK(generate(c, 42) == generate(c, 42));
    CHECK_FALSE(generate(c, 42) == generate(c, 43));

    ScenarioConfig d = c;
    d.split_mode = SplitMode::dirichlet;
    CHECK(generate(d, 7) == generate(d, 7));
}

TEST_CASE("adding WDs leaves earlier draws untouched")
{
    ScenarioConfig small;
    small.num_wds = 3;
    ScenarioConfig big = small;
    big.num_wds = 9;
    const auto a = generate(small, 5);
    const auto b = generate(big, 5);
    for (std::size_t i = 0; i < 3; ++i)
    {
        CHECK(a.wd(i) == b.wd(i));
        for (std::size_t k = 0; k < a.num_aps(); ++k)
        {
            CHECK(a.rate(i, k) == b.rate(i, k));
        }
    }
    CHECK(a.nodes() == b.nodes());
}

TEST_CASE("default dimensions and node ordering")
{
    const auto m = generate(ScenarioConfig{}, 1);
    CHECK(m.num_wds() == 6);
    CHECK(m.num_aps() == 3);
    CHECK(m.num_nodes() == 9);
    CHECK(m.num_slices() == 3);
    for (std::size_t j = 0; j < 8; ++j)
    {
        CHECK(m.node(j).kind == NodeKind::coin);
    }
    CHECK(m.node(8).kind == NodeKind::mec);
}

TEST_CASE("property: default draws stay inside the configured ranges over 1000 seeds")
{
    const ScenarioConfig c;
    // Extreme link rates from the corners of the power, distance and bandwidth ranges.
    const double rate_lo = channel_rate(18e6, c.wd_power_range.min, c.wd_ap_distance_range.max, c.channel);
    const double rate_hi = channel_rate(27e6, c.wd_power_range.max, c.wd_ap_distance_range.min, c.channel);
    const Range gips{2.0, 45.4};
    const Range power{1e-6, 0.1};
    const Range size_mb{1.7, 10.0};
    const Range coin{72.0, 768.0};

    bool ok = true;
    for (std::uint64_t seed = 0; seed < 1000; ++seed)
    {
        const auto m = generate(c, seed);
        for (const auto& wd : m.wds())
        {
            ok = ok && within(wd.local_capability, gips);
            ok = ok && within(wd.tx_power, power);
            ok = ok && within(wd.task_size / 8e6, {size_mb.min * (1 - 1e-15), size_mb.max * (1 + 1e-15)});
            ok = ok && within(wd.arrival_rate, c.arrival_rate_range);
            ok = ok && close_rel(wd.local_instructions, 4.0 * wd.task_size / 8e6, 1e-12);
            for (double l : wd.slice_instructions)
            {
                ok = ok && l >= 0.8 * wd.local_instructions * (1 - 1e-12)
                     && l <= 1.2 * wd.local_instructions * (1 + 1e-12);
            }
        }
        for (const auto& ap : m.aps())
        {
            ok = ok && (ap.bandwidth == 18e6 || ap.bandwidth == 27e6);
            for (double r : ap.rates)
            {
                ok = ok && r >= rate_lo && r <= rate_hi;
            }
        }
        for (const auto& node : m.nodes())
        {
            const double total = total_capability(node);
            if (node.kind == NodeKind::mec)
            {
                ok = ok && close_rel(total, 1285.0, 1e-9);
            }
            else
            {
                ok = ok && total >= 72.0 * (1 - 1e-9) && total <= 768.0 * (1 + 1e-9);
            }
        }
    }
    CHECK(ok);
}

TEST_CASE("property: slice capacities add up to the node total under both split modes")
{
    for (auto mode : {SplitMode::equal, SplitMode::dirichlet})
    {
        ScenarioConfig c;
        c.split_mode = mode;
        c.num_coins = 0;
        c.num_mecs = 2;
        for (std::size_t slices = 1; slices <= 5; ++slices)
        {
            c.num_slices = slices;
            for (std::uint64_t seed = 0; seed < 50; ++seed)
            {
                const auto m = generate(c, seed);
                for (const auto& node : m.nodes())
                {
                    CHECK(node.slice_capability.size() == slices);
                    CHECK(close_rel(total_capability(node), 1285.0, 1e-9));
                    if (mode == SplitMode::equal)
                    {
                        CHECK(node.slice_capability.front() == node.slice_capability.back());
                    }
                }
            }
        }
    }
}

TEST_CASE("a single slice holds the node's whole capability")
{
    ScenarioConfig c;
    c.num_slices = 1;
    c.split_mode = SplitMode::dirichlet;
    const auto m = generate(c, 3);
    for (const auto& node : m.nodes())
    {
        REQUIRE(node.slice_capability.size() == 1);
        CHECK(node.slice_capability[0] >= 72.0);
    }
    CHECK(m.node(8).slice_capability[0] == 1285.0);
}

TEST_CASE("invalid configs name the offending field")
{
    ScenarioConfig c;
    c.num_wds = 0;
    CHECK(config_error(c).starts_with("num_wds"));

    c = {};
    c.wd_gips_range = {45.4, 2.0};
    CHECK(config_error(c).starts_with("wd_gips_range"));

    c = {};
    c.ap_bandwidths_hz.clear();
    CHECK(config_error(c).starts_with("ap_bandwidths"));

    c = {};
    c.slice_instruction_jitter = 1.0;
    CHECK(config_error(c).starts_with("slice_instruction_jitter"));

    c = {};
    c.num_coins = 0;
    c.num_mecs = 0;
    CHECK_THROWS_AS(generate(c, 1), ConfigInvalid);

    CHECK(config_error(ScenarioConfig{}).empty());
}

TEST_CASE("random streams")
{
    RandomStream a(1, stream_wd, 0);
    RandomStream b(1, stream_wd, 0);
    RandomStream other(1, stream_wd, 1);
    bool differs = false;
    for (int k = 0; k < 1000; ++k)
    {
        const double x = a.unit();
        CHECK(x == b.unit());
        CHECK(x >= 0.0);
        CHECK(x < 1.0);
        differs = differs || x != other.unit();
        const auto n = a.below(7);
        CHECK(n == b.below(7));
        CHECK(n < 7);
    }
    CHECK(differs);
    CHECK(RandomStream(3, 1, 1).uniform(2.0, 2.0) == 2.0);

    // Reference values of the splitmix64 finaliser.
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("run seeds of nearby base seeds do not overlap")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t base = 0; base < 16; ++base)
    {
        for (std::uint64_t r = 0; r < 1000; ++r)
        {
            seen.insert(run_seed(base, r));
        }
    }
    CHECK(seen.size() == 16 * 1000);
}
