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

#include <sliceopt/validation.hpp>

#include <cmath>

namespace sliceopt {

namespace {

bool in_unit(double x)
{
    return x >= 0.0 && x <= 1.0 && std::isfinite(x);
}

std::string at(const char* kind, std::size_t e, std::size_t n)
{
    return std::string(" at ") + kind + " " + std::to_string(e) + ", slice " + std::to_string(n);
}

} // namespace

std::vector<Violation> validate_solution(const SystemModel& model,
                                         const DecisionVector& delta,
                                         const Policies& policies,
                                         StabilityMode stability_mode,
                                         std::optional<double> claimed_cost,
                                         double cost_tolerance)
{
    std::vector<Violation> out;
    auto report = [&out](Constraint c, std::string message) { out.push_back({c, std::move(message)}); };

    try
    {
        check_decisions(model, delta);
    }
    catch (const InvalidModel& e)
    {
        report(Constraint::single_decision, std::string("10a: ") + e.what());
        return out;
    }
    if (policies.num_wds() != model.num_wds() || policies.num_aps() != model.num_aps()
        || policies.num_nodes() != model.num_nodes() || policies.num_slices() != model.num_slices())
    {
        report(Constraint::single_decision, "10a: policy dimensions do not match the model");
        return out;
    }

    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        double row = 0.0;
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            const double w = policies.inter_radio(a, n);
            if (!in_unit(w))
            {
                report(Constraint::inter_slice_budget, "10d" + at("ap", a, n) + ": coefficient outside [0, 1]");
            }
            row += w;
        }
        if (!(row <= 1.0 + coefficient_tolerance))
        {
            report(Constraint::inter_slice_budget,
                   "10d at ap " + std::to_string(a) + ": inter-slice coefficients sum to " + std::to_string(row));
        }
    }

    for (std::size_t n = 0; n < model.num_slices(); ++n)
    {
        for (std::size_t a = 0; a < model.num_aps(); ++a)
        {
            double sum = 0.0;
            for (std::size_t i : offloader_set(delta, ResourceKind::access_point, a, n))
            {
                const double phi = policies.intra_radio(n, a, i);
                if (!in_unit(phi))
                {
                    report(Constraint::intra_slice_budget, "10e" + at("ap", a, n) + ": coefficient outside [0, 1]");
                }
                sum += phi;
            }
            if (!(sum <= 1.0 + coefficient_tolerance))
            {
                report(Constraint::intra_slice_budget, "10e" + at("ap", a, n) + ": radio shares sum to "
                                                           + std::to_string(sum));
            }
        }
        for (std::size_t j = 0; j < model.num_nodes(); ++j)
        {
            double sum = 0.0;
            for (std::size_t i : offloader_set(delta, ResourceKind::edge_node, j, n))
            {
                const double phi = policies.intra_compute(n, j, i);
                if (!in_unit(phi))
                {
                    report(Constraint::intra_slice_budget,
                           "10e" + at("node", j, n) + ": coefficient outside [0, 1]");
                }
                sum += phi;
            }
            if (!(sum <= 1.0 + coefficient_tolerance))
            {
                report(Constraint::intra_slice_budget, "10e" + at("node", j, n) + ": compute shares sum to "
                                                           + std::to_string(sum));
            }
        }
    }

    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        if (delta[i].is_local())
        {
            continue;
        }
        const auto& t = delta[i].target();
        if (!(model.capability(t.node, t.slice) > 0.0))
        {
            report(Constraint::slice_node, "slice-node" + at("node", t.node, t.slice) + ": no capacity");
            continue;
        }
        if (!(policies.inter_radio(t.ap, t.slice) * policies.intra_radio(t.slice, t.ap, i) > 0.0))
        {
            report(Constraint::degenerate, "degenerate" + at("ap", t.ap, t.slice) + ": wd " + std::to_string(i)
                                               + " has no radio share");
        }
        const double slack = queue_slack(model, delta, i, t.node, t.slice, policies, stability_mode);
        if (!(slack > stability_margin))
        {
            report(Constraint::queue_stability, "10c" + at("node", t.node, t.slice));
            continue;
        }
        const double edge = mm1_execution_time(model, delta, i, t.node, t.slice, policies, stability_mode);
        const double local = local_execution_time(model, i);
        if (edge > local)
        {
            report(Constraint::no_worse_than_local, "10b for wd " + std::to_string(i) + ": edge time "
                                                        + std::to_string(edge) + " s > local time "
                                                        + std::to_string(local) + " s");
        }
    }

    if (claimed_cost && out.empty())
    {
        const double actual = system_cost(model, delta, policies).system_cost;
        if (!(std::abs(actual - *claimed_cost) <= cost_tolerance * std::abs(actual)))
        {
            report(Constraint::cost_mismatch, "cost: claimed " + std::to_string(*claimed_cost)
                                                  + " s, recomputed " + std::to_string(actual) + " s");
        }
    }
    return out;
}

} // namespace sliceopt
