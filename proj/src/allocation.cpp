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

#include <sliceopt/allocation.hpp>

#include <cmath>
#include <string>

namespace sliceopt {

SqrtRuleResult sqrt_rule(std::span<const double> min_times)
{
    if (min_times.empty())
    {
        throw EmptyOffloaderSet("square-root rule needs at least one offloader");
    }
    std::vector<double> roots;
    roots.reserve(min_times.size());
    double total = 0.0;
    for (double c : min_times)
    {
        if (!(c > 0.0) || !std::isfinite(c))
        {
            throw NonPositiveCost("square-root rule needs finite positive costs, got " + std::to_string(c));
        }
        roots.push_back(std::sqrt(c));
        total += roots.back();
    }

    SqrtRuleResult out;
    out.coefficients.reserve(roots.size());
    for (double r : roots)
    {
        out.coefficients.push_back(r / total);
    }
    out.aggregate_cost = total * total;
    return out;
}

namespace {

// s_{a,n} = sum over offloaders through (a, n) of sqrt(T_{i,a}); [ap][slice].
InterRadioMatrix radio_aggregates(const SystemModel& model, const DecisionVector& delta)
{
    InterRadioMatrix s(model.num_aps(), std::vector<double>(model.num_slices(), 0.0));
    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        if (delta[i].is_offload())
        {
            const auto& t = delta[i].target();
            s[t.ap][t.slice] += std::sqrt(min_transmission_time(model, i, t.ap));
        }
    }
    return s;
}

} // namespace

InterRadioMatrix optimal_inter_slice(const SystemModel& model, const DecisionVector& delta)
{
    check_decisions(model, delta);
    const auto s = radio_aggregates(model, delta);
    const double uniform = 1.0 / static_cast<double>(model.num_slices());

    InterRadioMatrix omega(model.num_aps(), std::vector<double>(model.num_slices(), 0.0));
    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        double total = 0.0;
        for (double v : s[a])
        {
            total += v;
        }
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            // An AP nobody uses gets a uniform split; it never enters the cost.
            omega[a][n] = total > 0.0 ? s[a][n] / total : uniform;
        }
    }
    return omega;
}

InterRadioMatrix equal_share_inter_slice(std::size_t num_slices, std::size_t num_aps)
{
    if (num_slices == 0)
    {
        throw InvalidModel("equal share needs at least one slice");
    }
    return InterRadioMatrix(num_aps, std::vector<double>(num_slices, 1.0 / static_cast<double>(num_slices)));
}

AllocationResult optimal_policies_for_decision(const SystemModel& model, const DecisionVector& delta, InterMode mode)
{
    check_decisions(model, delta);

    AllocationResult out{Policies(model), 0.0};
    auto& policies = out.policies;

    const auto omega = mode == InterMode::optimal ? optimal_inter_slice(model, delta)
                                                  : equal_share_inter_slice(model.num_slices(), model.num_aps());
    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            policies.inter_radio(a, n) = omega[a][n];
        }
    }

    double radio_cost = 0.0;
    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        double ap_total = 0.0;
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            const auto users = offloader_set(delta, ResourceKind::access_point, a, n);
            if (users.empty())
            {
                continue;
            }
            std::vector<double> times;
            times.reserve(users.size());
            for (std::size_t i : users)
            {
                times.push_back(min_transmission_time(model, i, a));
            }
            const auto rule = sqrt_rule(times);
            for (std::size_t k = 0; k < users.size(); ++k)
            {
                policies.intra_radio(n, a, users[k]) = rule.coefficients[k];
            }
            const double s = std::sqrt(rule.aggregate_cost);
            if (mode == InterMode::optimal)
            {
                ap_total += s;
            }
            else
            {
                radio_cost += rule.aggregate_cost / omega[a][n];
            }
        }
        if (mode == InterMode::optimal)
        {
            radio_cost += ap_total * ap_total;
        }
    }

    double compute_cost = 0.0;
    for (std::size_t j = 0; j < model.num_nodes(); ++j)
    {
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            const auto users = offloader_set(delta, ResourceKind::edge_node, j, n);
            if (users.empty())
            {
                continue;
            }
            std::vector<double> times;
            times.reserve(users.size());
            for (std::size_t i : users)
            {
                times.push_back(min_execution_time(model, i, j, n));
            }
            const auto rule = sqrt_rule(times);
            for (std::size_t k = 0; k < users.size(); ++k)
            {
                policies.intra_compute(n, j, users[k]) = rule.coefficients[k];
            }
            compute_cost += rule.aggregate_cost;
        }
    }

    double local_cost = 0.0;
    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        if (delta[i].is_local())
        {
            local_cost += local_execution_time(model, i);
        }
    }

    out.conditional_cost = radio_cost + compute_cost + local_cost;
    return out;
}

namespace {

struct LatticeSearch
{
    std::span<const double> costs;
    long grid;
    double best_cost;
    std::vector<long> best;
    std::vector<long> units;

    double evaluate() const
    {
        double total = 0.0;
        for (std::size_t k = 0; k < units.size(); ++k)
        {
            total += costs[k] * static_cast<double>(grid) / static_cast<double>(units[k]);
        }
        return total;
    }

    // Coordinates before `depth` are fixed; the last one takes the remainder.
    void recurse(std::size_t depth, long used, const std::vector<long>& lo, const std::vector<long>& hi, long step)
    {
        const std::size_t last = units.size() - 1;
        if (depth == last)
        {
            const long rest = grid - used;
            if (rest < 1)
            {
                return;
            }
            units[last] = rest;
            const double cost = evaluate();
            if (cost < best_cost)
            {
                best_cost = cost;
                best = units;
            }
            return;
        }
        for (long u = lo[depth]; u <= hi[depth] && used + u < grid; u += step)
        {
            units[depth] = u;
            recurse(depth + 1, used + u, lo, hi, step);
        }
    }
};

} // namespace

SqrtRuleResult numeric_allocation_oracle(std::span<const double> min_times, std::size_t grid_points)
{
    if (min_times.empty())
    {
        throw EmptyOffloaderSet("oracle needs at least one entry");
    }
    if (min_times.size() > 4)
    {
        throw DimensionTooLarge("oracle handles at most 4 entries, got " + std::to_string(min_times.size()));
    }
    if (grid_points < 100)
    {
        throw DimensionTooLarge("oracle needs at least 100 grid points");
    }
    for (double c : min_times)
    {
        if (!(c > 0.0) || !std::isfinite(c))
        {
            throw NonPositiveCost("oracle needs finite positive costs");
        }
    }
    if (min_times.size() == 1)
    {
        return SqrtRuleResult{{1.0}, min_times[0]};
    }

    const std::size_t free = min_times.size() - 1;
    const long grid = static_cast<long>(grid_points);
    LatticeSearch search{min_times, grid, std::numeric_limits<double>::infinity(), {}, std::vector<long>(free + 1, 1)};

    // Full enumeration when the lattice holds at most ~4e6 points.
    double lattice_size = 1.0;
    for (std::size_t k = 0; k < free; ++k)
    {
        lattice_size *= static_cast<double>(grid);
    }
    long step = lattice_size <= 4e6 ? 1 : std::max<long>(1, grid / 100);

    std::vector<long> lo(free, step);
    std::vector<long> hi(free, grid);
    search.recurse(0, 0, lo, hi, step);

    while (step > 1)
    {
        const long window = 2 * step;
        step = std::max<long>(1, step / 10);
        for (std::size_t k = 0; k < free; ++k)
        {
            lo[k] = std::max<long>(1, search.best[k] - window);
            hi[k] = std::min<long>(grid, search.best[k] + window);
        }
        search.recurse(0, 0, lo, hi, step);
    }

    SqrtRuleResult out;
    for (long u : search.best)
    {
        out.coefficients.push_back(static_cast<double>(u) / static_cast<double>(grid));
    }
    out.aggregate_cost = search.best_cost;
    return out;
}

} // namespace sliceopt
