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

#include <sliceopt/model.hpp>

#include <algorithm>
#include <string>
#include <utility>

namespace sliceopt {

namespace {

void require(bool condition, const std::string& what)
{
    if (!condition)
    {
        throw InvalidModel(what);
    }
}

bool positive(double x)
{
    return x > 0.0;
}

} // namespace

SystemModel::SystemModel(std::vector<WirelessDevice> wds,
                         std::vector<AccessPoint> aps,
                         std::vector<EdgeNode> nodes,
                         std::size_t num_slices)
    : wds_(std::move(wds))
    , aps_(std::move(aps))
    , nodes_(std::move(nodes))
    , num_slices_(num_slices)
{
    require(num_slices_ >= 1, "model needs at least one slice");
    require(!wds_.empty(), "model needs at least one wireless device");
    require(!aps_.empty(), "model needs at least one access point");
    require(!nodes_.empty(), "model needs at least one edge node");

    for (std::size_t i = 0; i < wds_.size(); ++i)
    {
        const auto& wd = wds_[i];
        const auto tag = "wd " + std::to_string(i) + ": ";
        require(positive(wd.local_capability), tag + "local_capability must be > 0");
        require(positive(wd.tx_power), tag + "tx_power must be > 0");
        require(positive(wd.task_size), tag + "task_size must be > 0");
        require(positive(wd.local_instructions), tag + "local_instructions must be > 0");
        require(positive(wd.arrival_rate), tag + "arrival_rate must be > 0");
        require(wd.slice_instructions.size() == num_slices_, tag + "slice_instructions needs one entry per slice");
        require(std::all_of(wd.slice_instructions.begin(), wd.slice_instructions.end(), positive),
                tag + "slice_instructions must be > 0");
    }
    for (std::size_t a = 0; a < aps_.size(); ++a)
    {
        const auto& ap = aps_[a];
        const auto tag = "ap " + std::to_string(a) + ": ";
        require(positive(ap.bandwidth), tag + "bandwidth must be > 0");
        require(ap.rates.size() == wds_.size(), tag + "rates needs one entry per wd");
        require(std::all_of(ap.rates.begin(), ap.rates.end(), positive), tag + "rates must be > 0");
    }
    for (std::size_t j = 0; j < nodes_.size(); ++j)
    {
        const auto& node = nodes_[j];
        const auto tag = "node " + std::to_string(j) + ": ";
        require(node.slice_capability.size() == num_slices_, tag + "slice_capability needs one entry per slice");
        require(std::all_of(node.slice_capability.begin(), node.slice_capability.end(),
                            [](double f) { return f >= 0.0; }),
                tag + "slice_capability must be >= 0");
        require(std::any_of(node.slice_capability.begin(), node.slice_capability.end(), positive),
                tag + "slice_capability needs a positive entry");
    }
}

void check_decisions(const SystemModel& model, const DecisionVector& delta)
{
    if (delta.size() != model.num_wds())
    {
        throw InvalidModel("decision vector has " + std::to_string(delta.size()) + " entries for "
                           + std::to_string(model.num_wds()) + " wireless devices");
    }
    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        if (delta[i].is_local())
        {
            continue;
        }
        const auto& t = delta[i].target();
        if (t.ap >= model.num_aps() || t.node >= model.num_nodes() || t.slice >= model.num_slices())
        {
            throw InvalidModel("decision of wd " + std::to_string(i) + " is out of range");
        }
    }
}

Policies::Policies(std::size_t num_wds, std::size_t num_aps, std::size_t num_nodes, std::size_t num_slices)
    : num_wds_(num_wds)
    , num_aps_(num_aps)
    , num_nodes_(num_nodes)
    , num_slices_(num_slices)
    , omega_(num_aps * num_slices, 0.0)
    , phi_radio_(num_slices * num_aps * num_wds, 0.0)
    , phi_compute_(num_slices * num_nodes * num_wds, 0.0)
{
}

double uplink_rate(const SystemModel& model, std::size_t i, std::size_t a, std::size_t n, const Policies& policies)
{
    return policies.inter_radio(a, n) * policies.intra_radio(n, a, i) * model.rate(i, a);
}

double transmission_time(const SystemModel& model, std::size_t i, std::size_t a, std::size_t n, const Policies& policies)
{
    const double rate = uplink_rate(model, i, a, n, policies);
    if (!(rate > 0.0))
    {
        throw DegenerateAllocation("zero uplink rate for wd " + std::to_string(i) + " at ap " + std::to_string(a)
                                   + ", slice " + std::to_string(n));
    }
    return model.wd(i).task_size / rate;
}

double allocated_compute(const SystemModel& model, std::size_t i, std::size_t j, std::size_t n, const Policies& policies)
{
    return policies.intra_compute(n, j, i) * model.capability(j, n);
}

double queue_arrival_rate(const SystemModel& model,
                          const DecisionVector& delta,
                          std::size_t i,
                          std::size_t j,
                          StabilityMode mode)
{
    if (mode == StabilityMode::per_wd_share)
    {
        return model.wd(i).arrival_rate;
    }
    double total = 0.0;
    for (std::size_t k = 0; k < delta.size(); ++k)
    {
        if (delta[k].is_offload() && delta[k].target().node == j)
        {
            total += model.wd(k).arrival_rate;
        }
    }
    return total;
}

double queue_slack(const SystemModel& model,
                   const DecisionVector& delta,
                   std::size_t i,
                   std::size_t j,
                   std::size_t n,
                   const Policies& policies,
                   StabilityMode mode)
{
    const double service = allocated_compute(model, i, j, n, policies) / model.wd(i).slice_instructions.at(n);
    return service - queue_arrival_rate(model, delta, i, j, mode);
}

bool queue_stable(const SystemModel& model,
                  const DecisionVector& delta,
                  std::size_t i,
                  std::size_t j,
                  std::size_t n,
                  const Policies& policies,
                  StabilityMode mode)
{
    return queue_slack(model, delta, i, j, n, policies, mode) > 0.0;
}

double mm1_execution_time(const SystemModel& model,
                          const DecisionVector& delta,
                          std::size_t i,
                          std::size_t j,
                          std::size_t n,
                          const Policies& policies,
                          StabilityMode mode)
{
    const double slack = queue_slack(model, delta, i, j, n, policies, mode);
    if (!(slack > 0.0))
    {
        throw UnstableQueue("queue of wd " + std::to_string(i) + " at node " + std::to_string(j) + ", slice "
                            + std::to_string(n) + " is unstable");
    }
    return 1.0 / slack;
}

double local_execution_time(const SystemModel& model, std::size_t i)
{
    const auto& wd = model.wd(i);
    return wd.local_instructions / wd.local_capability;
}

double min_transmission_time(const SystemModel& model, std::size_t i, std::size_t a)
{
    return model.wd(i).task_size / model.rate(i, a);
}

double min_execution_time(const SystemModel& model, std::size_t i, std::size_t j, std::size_t n)
{
    const double capability = model.capability(j, n);
    if (!(capability > 0.0))
    {
        throw InfeasibleSliceNode("node " + std::to_string(j) + " has no capacity in slice " + std::to_string(n));
    }
    return model.wd(i).slice_instructions.at(n) / capability;
}

std::vector<std::size_t> offloader_set(const DecisionVector& delta, ResourceKind kind, std::size_t e, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < delta.size(); ++i)
    {
        if (delta[i].is_local())
        {
            continue;
        }
        const auto& t = delta[i].target();
        const std::size_t resource = kind == ResourceKind::access_point ? t.ap : t.node;
        if (resource == e && t.slice == n)
        {
            out.push_back(i);
        }
    }
    return out;
}

namespace {

double radio_term(const SystemModel& model, const Policies& policies, std::size_t i, const OffloadTarget& t)
{
    const double share = policies.inter_radio(t.ap, t.slice) * policies.intra_radio(t.slice, t.ap, i);
    if (!(share > 0.0))
    {
        throw DegenerateAllocation("zero radio share for wd " + std::to_string(i) + " at ap " + std::to_string(t.ap)
                                   + ", slice " + std::to_string(t.slice));
    }
    return min_transmission_time(model, i, t.ap) / share;
}

double compute_term(const SystemModel& model, const Policies& policies, std::size_t i, const OffloadTarget& t)
{
    const double share = policies.intra_compute(t.slice, t.node, i);
    if (!(share > 0.0))
    {
        throw DegenerateAllocation("zero compute share for wd " + std::to_string(i) + " at node "
                                   + std::to_string(t.node) + ", slice " + std::to_string(t.slice));
    }
    return min_execution_time(model, i, t.node, t.slice) / share;
}

} // namespace

double wd_cost(const SystemModel& model, const DecisionVector& delta, const Policies& policies, std::size_t i)
{
    const auto& d = delta.at(i);
    if (d.is_local())
    {
        return local_execution_time(model, i);
    }
    return radio_term(model, policies, i, d.target()) + compute_term(model, policies, i, d.target());
}

double slice_cost(const SystemModel& model, const DecisionVector& delta, const Policies& policies, std::size_t n)
{
    double cost = 0.0;
    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        for (std::size_t i : offloader_set(delta, ResourceKind::access_point, a, n))
        {
            cost += radio_term(model, policies, i, delta[i].target());
        }
    }
    for (std::size_t j = 0; j < model.num_nodes(); ++j)
    {
        for (std::size_t i : offloader_set(delta, ResourceKind::edge_node, j, n))
        {
            cost += compute_term(model, policies, i, delta[i].target());
        }
    }
    return cost;
}

CostBreakdown system_cost(const SystemModel& model, const DecisionVector& delta, const Policies& policies)
{
    check_decisions(model, delta);

    CostBreakdown out;
    out.wd_costs.reserve(model.num_wds());
    for (std::size_t i = 0; i < model.num_wds(); ++i)
    {
        out.wd_costs.push_back(wd_cost(model, delta, policies, i));
        if (delta[i].is_local())
        {
            out.local_total += out.wd_costs.back();
        }
    }
    double sliced = 0.0;
    out.slice_costs.reserve(model.num_slices());
    for (std::size_t n = 0; n < model.num_slices(); ++n)
    {
        out.slice_costs.push_back(slice_cost(model, delta, policies, n));
        sliced += out.slice_costs.back();
    }
    out.system_cost = sliced + out.local_total;
    return out;
}

} // namespace sliceopt
