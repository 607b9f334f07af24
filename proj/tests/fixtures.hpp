// Small hand-built instances and random generators shared by the tests.

#ifndef SLICEOPT_TESTS_FIXTURES_HPP
#define SLICEOPT_TESTS_FIXTURES_HPP

#include <sliceopt/model.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace sliceopt::testing {

inline WirelessDevice make_wd(double local_gips, double local_gi, double size_bits, std::vector<double> slice_gi,
                              double arrival = 0.1)
{
    WirelessDevice wd;
    wd.local_capability = local_gips;
    wd.tx_power = 0.01;
    wd.task_size = size_bits;
    wd.local_instructions = local_gi;
    wd.slice_instructions = std::move(slice_gi);
    wd.arrival_rate = arrival;
    return wd;
}

inline AccessPoint make_ap(std::vector<double> rates)
{
    AccessPoint ap;
    ap.bandwidth = 18e6;
    ap.rates = std::move(rates);
    return ap;
}

inline EdgeNode make_node(std::vector<double> capability, NodeKind kind = NodeKind::coin)
{
    EdgeNode node;
    node.kind = kind;
    node.slice_capability = std::move(capability);
    return node;
}

/// One WD, one AP, one node, one slice: local 10 GI at 2 GIPS (5 s), task of
/// 1.6e7 bits at 8e6 b/s (2 s), 10 GI at 20 GIPS in the slice (0.5 s),
/// 0.1 tasks/s.
inline SystemModel single_wd_model()
{
    return SystemModel({make_wd(2.0, 10.0, 1.6e7, {10.0}, 0.1)}, {make_ap({8e6})}, {make_node({20.0})}, 1);
}

/// Random instance with values in ranges where offloading is sometimes, but
/// not always, worthwhile.
inline SystemModel random_model(std::mt19937_64& rng, std::size_t wds, std::size_t aps, std::size_t nodes,
                                std::size_t slices)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };

    std::vector<WirelessDevice> w;
    for (std::size_t i = 0; i < wds; ++i)
    {
        std::vector<double> per_slice;
        const double gi = draw(5.0, 40.0);
        for (std::size_t n = 0; n < slices; ++n)
        {
            per_slice.push_back(gi * draw(0.8, 1.2));
        }
        w.push_back(make_wd(draw(2.0, 45.4), gi, draw(1.36e7, 8e7), per_slice, draw(0.1, 1.0)));
    }
    std::vector<AccessPoint> a;
    for (std::size_t k = 0; k < aps; ++k)
    {
        std::vector<double> rates;
        for (std::size_t i = 0; i < wds; ++i)
        {
            rates.push_back(draw(2e7, 4e8));
        }
        a.push_back(make_ap(rates));
    }
    std::vector<EdgeNode> nd;
    for (std::size_t j = 0; j < nodes; ++j)
    {
        const double total = draw(72.0, 768.0);
        std::vector<double> cap;
        for (std::size_t n = 0; n < slices; ++n)
        {
            cap.push_back(total / static_cast<double>(slices) * draw(0.5, 1.5));
        }
        nd.push_back(make_node(cap));
    }
    return SystemModel(std::move(w), std::move(a), std::move(nd), slices);
}

/// Uniformly random decision vector.
inline DecisionVector random_decisions(std::mt19937_64& rng, const SystemModel& model)
{
    DecisionVector delta;
    for (std::size_t i = 0; i < model.num_wds(); ++i)
    {
        if (rng() % 3 == 0)
        {
            delta.push_back(Decision::local());
        }
        else
        {
            delta.push_back(Decision::offload(rng() % model.num_aps(), rng() % model.num_nodes(),
                                              rng() % model.num_slices()));
        }
    }
    return delta;
}

inline bool close_rel(double a, double b, double rel)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= rel * scale;
}

} // namespace sliceopt::testing

#endif // SLICEOPT_TESTS_FIXTURES_HPP
