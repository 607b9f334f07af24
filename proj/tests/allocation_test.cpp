#include "fixtures.hpp"

#include <sliceopt/allocation.hpp>
#include <sliceopt/errors.hpp>
#include <sliceopt/solver.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

using namespace sliceopt;
using namespace sliceopt::testing;

namespace {

struct GridMin
{
    double x{0};
    double value{0};
};

// Minimises f over x in (0, 1) at the given step.
template <typename F>
GridMin grid_min_1d(F f, double step)
{
    GridMin best{0.0, std::numeric_limits<double>::infinity()};
    const auto steps = static_cast<int>(std::lround(1.0 / step));
    for (int k = 1; k < steps; ++k)
    {
        const double x = k * step;
        const double v = f(x);
        if (v < best.value)
        {
            best = {x, v};
        }
    }
    return best;
}

double sum(const std::vector<double>& v)
{
    return std::accumulate(v.begin(), v.end(), 0.0);
}

// One AP, two slices. WD 0 uses slice 0 with 9 s minimum transmission time,
// WD 1 uses slice 1 with 1 s; each sits alone on a node needing 0.1 s.
SystemModel two_slice_model()
{
    return SystemModel({make_wd(2.0, 10.0, 9e6, {1.0, 1.0}), make_wd(2.0, 10.0, 1e6, {1.0, 1.0})},
                       {make_ap({1e6, 1e6})}, {make_node({10.0, 10.0}), make_node({10.0, 10.0})}, 2);
}

} // namespace

TEST_CASE("sqrt rule examples")
{
    const auto single = sqrt_rule(std::vector<double>{2.5});
    CHECK(single.coefficients == std::vector<double>{1.0});
    CHECK(single.aggregate_cost == doctest::Approx(2.5).epsilon(1e-15));

    const auto flat = sqrt_rule(std::vector<double>{1, 1, 1, 1});
    for (double c : flat.coefficients)
    {
        CHECK(c == 0.25);
    }
    CHECK(flat.aggregate_cost == 16.0);

    const auto pair = sqrt_rule(std::vector<double>{1, 4});
    CHECK(pair.coefficients[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(pair.coefficients[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(pair.aggregate_cost == 9.0);
}

TEST_CASE("grid search over the two-entry simplex lands on the closed form")
{
    const auto best = grid_min_1d([](double x) { return 1.0 / x + 4.0 / (1.0 - x); }, 1e-4);
    CHECK(best.x == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
    CHECK(best.value == doctest::Approx(9.0).epsilon(1e-6));
    CHECK(sqrt_rule(std::vector<double>{1, 4}).aggregate_cost <= best.value);
}

TEST_CASE("sqrt rule errors")
{
    CHECK_THROWS_AS(sqrt_rule(std::vector<double>{}), EmptyOffloaderSet);
    CHECK_THROWS_AS(sqrt_rule(std::vector<double>{1.0, 0.0}), NonPositiveCost);
    CHECK_THROWS_AS(sqrt_rule(std::vector<double>{-1.0}), NonPositiveCost);
    CHECK_THROWS_AS(sqrt_rule(std::vector<double>{std::nan("")}), NonPositiveCost);
}

TEST_CASE("numeric oracle examples and errors")
{
    const auto pair = numeric_allocation_oracle(std::vector<double>{1, 4}, 10'000);
    CHECK(close_rel(pair.aggregate_cost, 9.0, 1e-3));
    CHECK(pair.aggregate_cost >= 9.0);

    const auto single = numeric_allocation_oracle(std::vector<double>{3.0}, 100);
    CHECK(single.coefficients == std::vector<double>{1.0});
    CHECK(single.aggregate_cost == 3.0);

    CHECK(close_rel(numeric_allocation_oracle(std::vector<double>{1, 1}, 100).aggregate_cost, 4.0, 1e-12));

    CHECK_THROWS_AS(numeric_allocation_oracle(std::vector<double>{1, 1, 1, 1, 1}, 100), DimensionTooLarge);
    CHECK_THROWS_AS(numeric_allocation_oracle(std::vector<double>{1, 1}, 99), DimensionTooLarge);
    CHECK_THROWS_AS(numeric_allocation_oracle(std::vector<double>{}, 100), EmptyOffloaderSet);
    CHECK_THROWS_AS(numeric_allocation_oracle(std::vector<double>{1, 0}, 100), NonPositiveCost);
}

TEST_CASE("property: sqrt rule coefficients lie in (0,1] and sum to one")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(1e-3, 100.0);
    std::uniform_int_distribution<std::size_t> len(1, 12);
    for (int trial = 0; trial < 500; ++trial)
    {
        std::vector<double> c(len(rng));
        for (auto& x : c)
        {
            x = u(rng);
        }
        const auto r = sqrt_rule(c);
        for (double phi : r.coefficients)
        {
            CHECK(phi > 0.0);
            CHECK(phi <= 1.0);
        }
        CHECK(std::abs(sum(r.coefficients) - 1.0) <= 1e-12);

        double direct = 0.0;
        for (std::size_t k = 0; k < c.size(); ++k)
        {
            direct += c[k] / r.coefficients[k];
        }
        CHECK(close_rel(direct, r.aggregate_cost, 1e-12));
    }
}

TEST_CASE("property: the closed form is never beaten by the grid oracle")
{
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(0.01, 50.0);
    std::uniform_int_distribution<std::size_t> len(1, 3);
    for (int trial = 0; trial < 30; ++trial)
    {
        std::vector<double> c(len(rng));
        for (auto& x : c)
        {
            x = u(rng);
        }
        const auto closed = sqrt_rule(c);
        const auto grid = numeric_allocation_oracle(c, 1'000);
        CHECK(closed.aggregate_cost <= grid.aggregate_cost * (1.0 + 1e-12));
        CHECK(close_rel(closed.aggregate_cost, grid.aggregate_cost, 1e-2));
    }
}

TEST_CASE("property: sqrt rule is homogeneous")
{
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.01, 50.0);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int trial = 0; trial < 200; ++trial)
    {
        std::vector<double> c(1 + trial % 6);
        for (auto& x : c)
        {
            x = u(rng);
        }
        const double k = scale(rng);
        std::vector<double> scaled = c;
        for (auto& x : scaled)
        {
            x *= k;
        }
        const auto base = sqrt_rule(c);
        const auto s = sqrt_rule(scaled);
        CHECK(close_rel(s.aggregate_cost, k * base.aggregate_cost, 1e-12));
        for (std::size_t i = 0; i < c.size(); ++i)
        {
            CHECK(close_rel(s.coefficients[i], base.coefficients[i], 1e-12));
        }
    }
}

TEST_CASE("equal share inter-slice matrix")
{
    const auto one = equal_share_inter_slice(1, 3);
    REQUIRE(one.size() == 3);
    for (const auto& row : one)
    {
        CHECK(row == std::vector<double>{1.0});
    }
    const auto four = equal_share_inter_slice(4, 2);
    for (const auto& row : four)
    {
        CHECK(row == std::vector<double>(4, 0.25));
        CHECK(sum(row) == 1.0);
    }
}

TEST_CASE("optimal inter-slice split follows the slice aggregates")
{
    const auto m = two_slice_model();
    const DecisionVector delta{Decision::offload(0, 0, 0), Decision::offload(0, 1, 1)};
    const auto omega = optimal_inter_slice(m, delta);
    CHECK(omega[0][0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(omega[0][1] == doctest::Approx(0.25).epsilon(1e-15));

    const auto best = grid_min_1d([](double w) { return 9.0 / w + 1.0 / (1.0 - w); }, 1e-4);
    CHECK(best.x == doctest::Approx(0.75).epsilon(1e-4));
    CHECK(best.value == doctest::Approx(16.0).epsilon(1e-6));

    const DecisionVector symmetric{Decision::offload(0, 0, 0), Decision::offload(0, 1, 1)};
    const SystemModel twin({make_wd(2.0, 10.0, 1e6, {1.0, 1.0}), make_wd(2.0, 10.0, 1e6, {1.0, 1.0})},
                           {make_ap({1e6, 1e6})}, {make_node({10.0, 10.0}), make_node({10.0, 10.0})}, 2);
    const auto even = optimal_inter_slice(twin, symmetric);
    CHECK(even[0][0] == 0.5);
    CHECK(even[0][1] == 0.5);
}

TEST_CASE("optimal inter-slice conventions for unused resources")
{
    const SystemModel m({make_wd(2.0, 10.0, 1e6, {1.0, 1.0, 1.0})}, {make_ap({1e6}), make_ap({1e6})},
                        {make_node({10.0, 10.0, 10.0})}, 3);
    const auto omega = optimal_inter_slice(m, {Decision::offload(0, 0, 2)});
    CHECK(omega[0] == std::vector<double>{0.0, 0.0, 1.0});
    for (double w : omega[1])
    {
        CHECK(w == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }

    const SystemModel one_slice({make_wd(2.0, 10.0, 1e6, {1.0}), make_wd(2.0, 10.0, 2e6, {1.0})},
                                {make_ap({1e6, 1e6})}, {make_node({10.0})}, 1);
    CHECK(optimal_inter_slice(one_slice, {Decision::offload(0, 0, 0), Decision::offload(0, 0, 0)})[0][0] == 1.0);
}

TEST_CASE("conditional cost, optimal versus equal share")
{
    const auto m = two_slice_model();
    const DecisionVector delta{Decision::offload(0, 0, 0), Decision::offload(0, 1, 1)};
    const auto opt = optimal_policies_for_decision(m, delta, InterMode::optimal);
    const auto eq = optimal_policies_for_decision(m, delta, InterMode::equal_share);
    // 0.1 s of compute per WD on its own node.
    CHECK(opt.conditional_cost == doctest::Approx(16.0 + 0.2).epsilon(1e-14));
    CHECK(eq.conditional_cost == doctest::Approx(20.0 + 0.2).epsilon(1e-14));
    CHECK((eq.conditional_cost - 0.2) / (opt.conditional_cost - 0.2) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(eq.policies.inter_radio(0, 0) == 0.5);
}

TEST_CASE("conditional cost of trivial decisions")
{
    const auto single = single_wd_model();
    const auto local = optimal_policies_for_decision(single, {Decision::local()}, InterMode::optimal);
    CHECK(local.conditional_cost == 5.0);

    const auto off = optimal_policies_for_decision(single, {Decision::offload(0, 0, 0)}, InterMode::optimal);
    CHECK(off.conditional_cost == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(off.policies.inter_radio(0, 0) == 1.0);
    CHECK(off.policies.intra_radio(0, 0, 0) == 1.0);
    CHECK(off.policies.intra_compute(0, 0, 0) == 1.0);

    const SystemModel empty_slice({make_wd(2.0, 10.0, 1e6, {1.0, 1.0})}, {make_ap({1e6})}, {make_node({10.0, 0.0})}, 2);
    CHECK_THROWS_AS(optimal_policies_for_decision(empty_slice, {Decision::offload(0, 0, 1)}, InterMode::optimal),
                    InfeasibleSliceNode);
}

TEST_CASE("property: allocation uses every budget in full and its cost matches the model")
{
    std::mt19937_64 rng(24);
    for (int trial = 0; trial < 200; ++trial)
    {
        const auto m = random_model(rng, 1 + trial % 5, 1 + trial % 2, 1 + trial % 3, 1 + trial % 3);
        const auto delta = random_decisions(rng, m);
        for (auto mode : {InterMode::optimal, InterMode::equal_share})
        {
            const auto r = optimal_policies_for_decision(m, delta, mode);
            CHECK(close_rel(r.conditional_cost, system_cost(m, delta, r.policies).system_cost, 1e-12));

            for (std::size_t a = 0; a < m.num_aps(); ++a)
            {
                double row = 0.0;
                bool used = false;
                for (std::size_t n = 0; n < m.num_slices(); ++n)
                {
                    row += r.policies.inter_radio(a, n);
                    const auto off = offloader_set(delta, ResourceKind::access_point, a, n);
                    used = used || !off.empty();
                    if (off.empty())
                    {
                        continue;
                    }
                    double phi = 0.0;
                    for (std::size_t i : off)
                    {
                        phi += r.policies.intra_radio(n, a, i);
                    }
                    CHECK(std::abs(phi - 1.0) <= 1e-12);
                }
                if (used || mode == InterMode::equal_share)
                {
                    CHECK(std::abs(row - 1.0) <= 1e-12);
                }
            }
            for (std::size_t j = 0; j < m.num_nodes(); ++j)
            {
                for (std::size_t n = 0; n < m.num_slices(); ++n)
                {
                    const auto off = offloader_set(delta, ResourceKind::edge_node, j, n);
                    if (off.empty())
                    {
                        continue;
                    }
                    double phi = 0.0;
                    for (std::size_t i : off)
                    {
                        phi += r.policies.intra_compute(n, j, i);
                    }
                    CHECK(std::abs(phi - 1.0) <= 1e-12);
                }
            }
        }
    }
}

TEST_CASE("property: optimal inter-slice split dominates the equal split")
{
    std::mt19937_64 rng(25);
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t slices = 1 + trial % 4;
        const auto m = random_model(rng, 4, 2, 2, slices);
        for (int k = 0; k < 20; ++k)
        {
            const auto delta = random_decisions(rng, m);
            const double opt = optimal_policies_for_decision(m, delta, InterMode::optimal).conditional_cost;
            const double eq = optimal_policies_for_decision(m, delta, InterMode::equal_share).conditional_cost;
            CHECK(opt <= eq + 1e-9);
            if (slices == 1)
            {
                CHECK(close_rel(opt, eq, 1e-12));
            }
        }
    }
}

TEST_CASE("property: perturbing the optimal coefficients never lowers the cost")
{
    std::mt19937_64 rng(26);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        const auto m = random_model(rng, 4, 2, 2, 2);
        const auto delta = random_decisions(rng, m);
        const auto r = optimal_policies_for_decision(m, delta, InterMode::optimal);
        const double base = system_cost(m, delta, r.policies).system_cost;

        // Shift mass between the two slices of AP 0 when both carry offloaders.
        if (offloader_set(delta, ResourceKind::access_point, 0, 0).empty()
            || offloader_set(delta, ResourceKind::access_point, 0, 1).empty())
        {
            continue;
        }
        auto p = r.policies;
        const double shift = 0.5 * u(rng) * std::min(p.inter_radio(0, 0), p.inter_radio(0, 1));
        p.inter_radio(0, 0) -= shift;
        p.inter_radio(0, 1) += shift;
        CHECK(system_cost(m, delta, p).system_cost >= base * (1.0 - 1e-12));
        p = r.policies;
        p.inter_radio(0, 0) += shift;
        p.inter_radio(0, 1) -= shift;
        CHECK(system_cost(m, delta, p).system_cost >= base * (1.0 - 1e-12));
    }
}

TEST_CASE("property: fast evaluator agrees with the reference evaluation")
{
    std::mt19937_64 rng(27);
    for (int trial = 0; trial < 300; ++trial)
    {
        const auto m = random_model(rng, 1 + trial % 4, 1 + trial % 2, 1 + trial % 3, 1 + trial % 3);
        const auto mode = trial % 2 == 0 ? InterMode::optimal : InterMode::equal_share;
        const auto stab = trial % 3 == 0 ? StabilityMode::per_wd_share : StabilityMode::node_total;
        DecisionEvaluator fast(m, mode, stab);
        for (int k = 0; k < 10; ++k)
        {
            const auto delta = random_decisions(rng, m);
            std::vector<std::size_t> codes;
            for (const auto& d : delta)
            {
                codes.push_back(encode_decision(m, d));
            }
            const auto ref = evaluate_decision(m, delta, mode, stab);
            const auto got = fast.evaluate(codes);
            CHECK(ref.feasible == got.feasible);
            CHECK(ref.violated == got.violated);
            if (ref.feasible && got.feasible)
            {
                CHECK(close_rel(ref.cost, got.cost, 1e-12));
            }
            double cost = 0.0;
            CHECK(fast.evaluate_fast(codes, cost) == ref.feasible);
        }
    }
}
