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

#include <sliceopt/solver.hpp>

#include <sliceopt/random.hpp>

#include <cmath>
#include <limits>
#include <numeric>

namespace sliceopt {

std::string_view constraint_tag(Constraint c)
{
    switch (c)
    {
    case Constraint::none: return "none";
    case Constraint::single_decision: return "10a";
    case Constraint::no_worse_than_local: return "10b";
    case Constraint::queue_stability: return "10c";
    case Constraint::inter_slice_budget: return "10d";
    case Constraint::intra_slice_budget: return "10e";
    case Constraint::slice_node: return "slice-node";
    case Constraint::degenerate: return "degenerate";
    case Constraint::cost_mismatch: return "cost";
    }
    return "unknown";
}

std::string_view method_name(SolveMethod m)
{
    return m == SolveMethod::exhaustive ? "exhaustive" : "best-response";
}

std::size_t options_per_wd(const SystemModel& model)
{
    return 1 + model.num_aps() * model.num_nodes() * model.num_slices();
}

std::size_t encode_decision(const SystemModel& model, const Decision& d)
{
    if (d.is_local())
    {
        return 0;
    }
    const auto& t = d.target();
    return 1 + (t.ap * model.num_nodes() + t.node) * model.num_slices() + t.slice;
}

Decision decode_decision(const SystemModel& model, std::size_t code)
{
    if (code == 0)
    {
        return Decision::local();
    }
    if (code >= options_per_wd(model))
    {
        throw InvalidModel("decision code " + std::to_string(code) + " out of range");
    }
    const std::size_t k = code - 1;
    const std::size_t n = k % model.num_slices();
    const std::size_t j = (k / model.num_slices()) % model.num_nodes();
    const std::size_t a = k / (model.num_slices() * model.num_nodes());
    return Decision::offload(a, j, n);
}

std::uint64_t search_space_size(const SystemModel& model)
{
    const std::uint64_t base = options_per_wd(model);
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < model.num_wds(); ++i)
    {
        if (size > std::numeric_limits<std::uint64_t>::max() / base)
        {
            return std::numeric_limits<std::uint64_t>::max();
        }
        size *= base;
    }
    return size;
}

Evaluation evaluate_decision(const SystemModel& model,
                             const DecisionVector& delta,
                             InterMode inter_mode,
                             StabilityMode stability_mode)
{
    check_decisions(model, delta);
    Evaluation out;

    AllocationResult allocation;
    try
    {
        allocation = optimal_policies_for_decision(model, delta, inter_mode);
    }
    catch (const InfeasibleSliceNode& e)
    {
        out.feasible = false;
        out.violated = Constraint::slice_node;
        out.detail = e.what();
        return out;
    }

    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        if (delta[i].is_local())
        {
            continue;
        }
        const auto& t = delta[i].target();
        const double slack = queue_slack(model, delta, i, t.node, t.slice, allocation.policies, stability_mode);
        if (!(slack > stability_margin))
        {
            out.feasible = false;
            out.violated = Constraint::queue_stability;
            out.detail = "10c at node " + std::to_string(t.node) + ", slice " + std::to_string(t.slice);
            return out;
        }
        const double t_edge
            = mm1_execution_time(model, delta, i, t.node, t.slice, allocation.policies, stability_mode);
        if (t_edge > local_execution_time(model, i))
        {
            out.feasible = false;
            out.violated = Constraint::no_worse_than_local;
            out.detail = "10b for wd " + std::to_string(i);
            return out;
        }
    }
    out.cost = allocation.conditional_cost;
    return out;
}

DecisionEvaluator::DecisionEvaluator(const SystemModel& model, InterMode inter_mode, StabilityMode stability_mode)
    : model_(&model)
    , inter_mode_(inter_mode)
    , stability_mode_(stability_mode)
    , num_aps_(model.num_aps())
    , num_nodes_(model.num_nodes())
    , num_slices_(model.num_slices())
{
    const std::size_t num_wds = model.num_wds();

    targets_.resize(options_per_wd(model));
    for (std::size_t code = 1; code < targets_.size(); ++code)
    {
        const auto t = decode_decision(model, code).target();
        targets_[code] = Target{t.ap, t.node, t.slice};
    }

    local_time_.resize(num_wds);
    sqrt_tx_.resize(num_wds * num_aps_);
    sqrt_exec_.resize(num_wds * num_nodes_ * num_slices_);
    instructions_.resize(num_wds * num_slices_);
    arrival_.resize(num_wds);
    for (std::size_t i = 0; i < num_wds; ++i)
    {
        local_time_[i] = local_execution_time(model, i);
        arrival_[i] = model.wd(i).arrival_rate;
        for (std::size_t a = 0; a < num_aps_; ++a)
        {
            sqrt_tx_[i * num_aps_ + a] = std::sqrt(min_transmission_time(model, i, a));
        }
        for (std::size_t n = 0; n < num_slices_; ++n)
        {
            instructions_[i * num_slices_ + n] = model.wd(i).slice_instructions[n];
        }
        for (std::size_t j = 0; j < num_nodes_; ++j)
        {
            for (std::size_t n = 0; n < num_slices_; ++n)
            {
                sqrt_exec_[(i * num_nodes_ + j) * num_slices_ + n]
                    = model.capability(j, n) > 0.0 ? std::sqrt(min_execution_time(model, i, j, n)) : 0.0;
            }
        }
    }
    capability_.resize(num_nodes_ * num_slices_);
    for (std::size_t j = 0; j < num_nodes_; ++j)
    {
        for (std::size_t n = 0; n < num_slices_; ++n)
        {
            capability_[j * num_slices_ + n] = model.capability(j, n);
        }
    }
    radio_.resize(num_aps_ * num_slices_);
    compute_.resize(num_nodes_ * num_slices_);
    node_arrivals_.resize(num_nodes_);
}

// Mirrors the arithmetic of optimal_policies_for_decision and the model-level
// queue formulas term by term, so both paths agree to the last bit on
// feasibility and to rounding on cost.
bool DecisionEvaluator::run(std::span<const std::size_t> codes, double& cost, Constraint& violated, std::size_t& culprit)
{
    std::fill(radio_.begin(), radio_.end(), 0.0);
    std::fill(compute_.begin(), compute_.end(), 0.0);
    std::fill(node_arrivals_.begin(), node_arrivals_.end(), 0.0);

    double local_cost = 0.0;
    for (std::size_t i = 0; i < codes.size(); ++i)
    {
        const std::size_t code = codes[i];
        if (code == 0)
        {
            local_cost += local_time_[i];
            continue;
        }
        const Target& t = targets_[code];
        if (!(capability_[t.node * num_slices_ + t.slice] > 0.0))
        {
            violated = Constraint::slice_node;
            culprit = i;
            return false;
        }
        radio_[t.ap * num_slices_ + t.slice] += sqrt_tx_[i * num_aps_ + t.ap];
        compute_[t.node * num_slices_ + t.slice] += sqrt_exec_[(i * num_nodes_ + t.node) * num_slices_ + t.slice];
        node_arrivals_[t.node] += arrival_[i];
    }

    for (std::size_t i = 0; i < codes.size(); ++i)
    {
        const std::size_t code = codes[i];
        if (code == 0)
        {
            continue;
        }
        const Target& t = targets_[code];
        const std::size_t cell = t.node * num_slices_ + t.slice;
        const double share = sqrt_exec_[(i * num_nodes_ + t.node) * num_slices_ + t.slice] / compute_[cell];
        const double service = share * capability_[cell] / instructions_[i * num_slices_ + t.slice];
        const double lambda
            = stability_mode_ == StabilityMode::node_total ? node_arrivals_[t.node] : arrival_[i];
        const double slack = service - lambda;
        if (!(slack > stability_margin))
        {
            violated = Constraint::queue_stability;
            culprit = i;
            return false;
        }
        if (1.0 / slack > local_time_[i])
        {
            violated = Constraint::no_worse_than_local;
            culprit = i;
            return false;
        }
    }

    double radio_cost = 0.0;
    const double omega = 1.0 / static_cast<double>(num_slices_);
    for (std::size_t a = 0; a < num_aps_; ++a)
    {
        double ap_total = 0.0;
        for (std::size_t n = 0; n < num_slices_; ++n)
        {
            const double s = radio_[a * num_slices_ + n];
            if (s == 0.0)
            {
                continue;
            }
            if (inter_mode_ == InterMode::optimal)
            {
                ap_total += std::sqrt(s * s);
            }
            else
            {
                radio_cost += s * s / omega;
            }
        }
        if (inter_mode_ == InterMode::optimal)
        {
            radio_cost += ap_total * ap_total;
        }
    }
    double compute_cost = 0.0;
    for (double q : compute_)
    {
        if (q != 0.0)
        {
            compute_cost += q * q;
        }
    }
    cost = radio_cost + compute_cost + local_cost;
    violated = Constraint::none;
    return true;
}

bool DecisionEvaluator::evaluate_fast(std::span<const std::size_t> codes, double& cost)
{
    Constraint violated;
    std::size_t culprit;
    return run(codes, cost, violated, culprit);
}

Evaluation DecisionEvaluator::evaluate(std::span<const std::size_t> codes)
{
    Evaluation out;
    std::size_t culprit = 0;
    out.feasible = run(codes, out.cost, out.violated, culprit);
    if (!out.feasible)
    {
        out.cost = 0.0;
        const Target& t = targets_[codes[culprit]];
        switch (out.violated)
        {
        case Constraint::queue_stability:
            out.detail = "10c at node " + std::to_string(t.node) + ", slice " + std::to_string(t.slice);
            break;
        case Constraint::no_worse_than_local: out.detail = "10b for wd " + std::to_string(culprit); break;
        default:
            out.detail = "node " + std::to_string(t.node) + " has no capacity in slice " + std::to_string(t.slice);
            break;
        }
    }
    return out;
}

namespace {

Solution finish(const SystemModel& model,
                std::span<const std::size_t> codes,
                InterMode inter_mode,
                SolveMethod method,
                std::size_t iterations,
                std::vector<double> trace)
{
    Solution out;
    out.delta.reserve(codes.size());
    for (std::size_t code : codes)
    {
        out.delta.push_back(decode_decision(model, code));
    }
    auto allocation = optimal_policies_for_decision(model, out.delta, inter_mode);
    out.policies = std::move(allocation.policies);
    out.cost = system_cost(model, out.delta, out.policies);
    out.method = method;
    out.iterations = iterations;
    out.cost_trace = std::move(trace);
    return out;
}

} // namespace

Solution exhaustive_solve(const SystemModel& model,
                          InterMode inter_mode,
                          StabilityMode stability_mode,
                          std::uint64_t max_space)
{
    const std::uint64_t space = search_space_size(model);
    if (space > max_space)
    {
        throw SearchSpaceTooLarge("decision space has " + std::to_string(space) + " vectors, limit is "
                                  + std::to_string(max_space));
    }

    DecisionEvaluator evaluator(model, inter_mode, stability_mode);
    const std::size_t base = options_per_wd(model);
    const std::size_t num_wds = model.num_wds();

    std::vector<std::size_t> codes(num_wds, 0);
    std::vector<std::size_t> best(num_wds, 0);
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t evaluated = 0;

    // Lexicographic order with WD 0 most significant; a strict comparison
    // keeps the earliest vector on ties.
    while (true)
    {
        double cost;
        ++evaluated;
        if (evaluator.evaluate_fast(codes, cost) && cost < best_cost)
        {
            best_cost = cost;
            best = codes;
        }
        std::size_t digit = num_wds;
        while (digit > 0)
        {
            --digit;
            if (++codes[digit] < base)
            {
                break;
            }
            codes[digit] = 0;
            if (digit == 0)
            {
                return finish(model, best, inter_mode, SolveMethod::exhaustive, evaluated, {best_cost});
            }
        }
    }
}

Solution best_response_solve(const SystemModel& model,
                             InterMode inter_mode,
                             StabilityMode stability_mode,
                             std::size_t max_rounds,
                             std::uint64_t seed)
{
    return best_response_solve(model, inter_mode, stability_mode, max_rounds, seed,
                               DecisionVector(model.num_wds(), Decision::local()));
}

Solution best_response_solve(const SystemModel& model,
                             InterMode inter_mode,
                             StabilityMode stability_mode,
                             std::size_t max_rounds,
                             std::uint64_t seed,
                             const DecisionVector& start)
{
    if (max_rounds == 0)
    {
        throw InvalidModel("best response needs max_rounds >= 1");
    }
    check_decisions(model, start);

    DecisionEvaluator evaluator(model, inter_mode, stability_mode);
    const std::size_t base = options_per_wd(model);
    const std::size_t num_wds = model.num_wds();

    std::vector<std::size_t> codes;
    codes.reserve(num_wds);
    for (const auto& d : start)
    {
        codes.push_back(encode_decision(model, d));
    }
    double current;
    if (!evaluator.evaluate_fast(codes, current))
    {
        throw InvalidModel("best response needs a feasible starting decision vector");
    }

    std::vector<double> trace{current};
    RandomStream rng(seed, stream_best_response, 0);
    std::vector<std::size_t> order(num_wds);

    std::size_t rounds = 0;
    bool changed = true;
    while (changed && rounds < max_rounds)
    {
        ++rounds;
        changed = false;
        std::iota(order.begin(), order.end(), std::size_t{0});
        for (std::size_t k = num_wds; k > 1; --k)
        {
            std::swap(order[k - 1], order[rng.below(k)]);
        }

        for (std::size_t i : order)
        {
            const std::size_t kept = codes[i];
            std::size_t best_code = kept;
            double best_cost = current;
            for (std::size_t code = 0; code < base; ++code)
            {
                if (code == kept)
                {
                    continue;
                }
                codes[i] = code;
                double cost;
                // Strict improvement only: a tie keeps the current decision.
                if (evaluator.evaluate_fast(codes, cost) && cost < best_cost)
                {
                    best_cost = cost;
                    best_code = code;
                }
            }
            codes[i] = best_code;
            if (best_code != kept)
            {
                current = best_cost;
                trace.push_back(current);
                changed = true;
            }
        }
    }

    return finish(model, codes, inter_mode, SolveMethod::best_response, rounds, std::move(trace));
}

} // namespace sliceopt
