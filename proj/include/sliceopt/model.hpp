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
 * \file sliceopt/model.hpp
 *
 * \brief Domain types and closed-form latency/cost formulas of the sliced
 *  edge network.
 *
 * Units are fixed throughout: bits for data, giga-instructions (GI) for work,
 * giga-instructions per second (GIPS) for capability, seconds for time and
 * hertz for bandwidth.
 */

#ifndef SLICEOPT_MODEL_HPP
#define SLICEOPT_MODEL_HPP

#include <sliceopt/errors.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <vector>

namespace sliceopt {

/// Absolute tolerance used for every "sum of coefficients <= 1" check.
inline constexpr double coefficient_tolerance = 1e-9;

struct WirelessDevice
{
    std::size_t id{0};
    double local_capability{0};          // GIPS
    double tx_power{0};                  // W
    double task_size{0};                 // bits
    double local_instructions{0};        // GI
    std::vector<double> slice_instructions; // GI, one entry per slice
    double arrival_rate{0};              // tasks/s

    bool operator==(const WirelessDevice&) const = default;
};

struct AccessPoint
{
    std::size_t id{0};
    double bandwidth{0};       // Hz
    std::vector<double> rates; // b/s, one entry per WD

    bool operator==(const AccessPoint&) const = default;
};

enum class NodeKind
{
    coin,
    mec
};

struct EdgeNode
{
    std::size_t id{0};
    NodeKind kind{NodeKind::coin};
    std::vector<double> slice_capability; // GIPS, one entry per slice

    bool operator==(const EdgeNode&) const = default;
};

/// Immutable problem instance. The constructor enforces every structural
/// invariant and throws InvalidModel otherwise.
class SystemModel
{
public:
    SystemModel(std::vector<WirelessDevice> wds,
                std::vector<AccessPoint> aps,
                std::vector<EdgeNode> nodes,
                std::size_t num_slices);

    const std::vector<WirelessDevice>& wds() const noexcept { return wds_; }
    const std::vector<AccessPoint>& aps() const noexcept { return aps_; }
    const std::vector<EdgeNode>& nodes() const noexcept { return nodes_; }

    std::size_t num_wds() const noexcept { return wds_.size(); }
    std::size_t num_aps() const noexcept { return aps_.size(); }
    std::size_t num_nodes() const noexcept { return nodes_.size(); }
    std::size_t num_slices() const noexcept { return num_slices_; }

    const WirelessDevice& wd(std::size_t i) const { return wds_.at(i); }
    const AccessPoint& ap(std::size_t a) const { return aps_.at(a); }
    const EdgeNode& node(std::size_t j) const { return nodes_.at(j); }

    /// Physical rate R_{i,a}.
    double rate(std::size_t i, std::size_t a) const { return aps_.at(a).rates.at(i); }
    /// Capability F_j^n of node j in slice n.
    double capability(std::size_t j, std::size_t n) const { return nodes_.at(j).slice_capability.at(n); }

    bool operator==(const SystemModel&) const = default;

private:
    std::vector<WirelessDevice> wds_;
    std::vector<AccessPoint> aps_;
    std::vector<EdgeNode> nodes_;
    std::size_t num_slices_;
};

/// Offloading target: through AP `ap` to node `node` inside slice `slice`.
struct OffloadTarget
{
    std::size_t ap{0};
    std::size_t node{0};
    std::size_t slice{0};

    auto operator<=>(const OffloadTarget&) const = default;
};

/// Per-WD decision: run locally or offload to a target.
/// Ordering is Local first, then targets in ascending (ap, node, slice).
class Decision
{
public:
    Decision() = default;

    static Decision local() { return Decision{}; }
    static Decision offload(std::size_t ap, std::size_t node, std::size_t slice)
    {
        Decision d;
        d.target_ = OffloadTarget{ap, node, slice};
        return d;
    }

    bool is_local() const noexcept { return !target_.has_value(); }
    bool is_offload() const noexcept { return target_.has_value(); }
    /// Precondition: is_offload().
    const OffloadTarget& target() const { return target_.value(); }

    auto operator<=>(const Decision&) const = default;

private:
    std::optional<OffloadTarget> target_;
};

/// One decision per WD.
using DecisionVector = std::vector<Decision>;

/// Throws InvalidModel unless `delta` has one in-range decision per WD.
void check_decisions(const SystemModel& model, const DecisionVector& delta);

/// Inter-slice radio coefficients omega_a^n plus intra-slice radio and
/// compute coefficients phi, all zero-initialised.
class Policies
{
public:
    Policies() = default;
    Policies(std::size_t num_wds, std::size_t num_aps, std::size_t num_nodes, std::size_t num_slices);
    explicit Policies(const SystemModel& model)
        : Policies(model.num_wds(), model.num_aps(), model.num_nodes(), model.num_slices())
    {
    }

    std::size_t num_wds() const noexcept { return num_wds_; }
    std::size_t num_aps() const noexcept { return num_aps_; }
    std::size_t num_nodes() const noexcept { return num_nodes_; }
    std::size_t num_slices() const noexcept { return num_slices_; }

    double& inter_radio(std::size_t a, std::size_t n) { return omega_.at(a * num_slices_ + n); }
    double inter_radio(std::size_t a, std::size_t n) const { return omega_.at(a * num_slices_ + n); }

    double& intra_radio(std::size_t n, std::size_t a, std::size_t i)
    {
        return phi_radio_.at((n * num_aps_ + a) * num_wds_ + i);
    }
    double intra_radio(std::size_t n, std::size_t a, std::size_t i) const
    {
        return phi_radio_.at((n * num_aps_ + a) * num_wds_ + i);
    }

    double& intra_compute(std::size_t n, std::size_t j, std::size_t i)
    {
        return phi_compute_.at((n * num_nodes_ + j) * num_wds_ + i);
    }
    double intra_compute(std::size_t n, std::size_t j, std::size_t i) const
    {
        return phi_compute_.at((n * num_nodes_ + j) * num_wds_ + i);
    }

    bool operator==(const Policies&) const = default;

private:
    std::size_t num_wds_{0};
    std::size_t num_aps_{0};
    std::size_t num_nodes_{0};
    std::size_t num_slices_{0};
    std::vector<double> omega_;
    std::vector<double> phi_radio_;
    std::vector<double> phi_compute_;
};

/// Result of the cost evaluation. system_cost == sum(slice_costs) + local_total.
struct CostBreakdown
{
    std::vector<double> wd_costs;
    std::vector<double> slice_costs;
    double local_total{0};
    double system_cost{0};
};

/// Interpretation of the arrival term of the M/M/1 formulas.
enum class StabilityMode
{
    node_total,   ///< total arrival rate of every WD routed to the node
    per_wd_share, ///< each WD owns an isolated queue fed only by its own tasks
};

/// Uplink rate omega_a^n * phi_{i,a}^n * R_{i,a}.
double uplink_rate(const SystemModel& model, std::size_t i, std::size_t a, std::size_t n, const Policies& policies);

/// S_i / uplink_rate. Throws DegenerateAllocation when the uplink rate is 0.
double transmission_time(const SystemModel& model, std::size_t i, std::size_t a, std::size_t n, const Policies& policies);

/// phi_{i,j}^n * F_j^n.
double allocated_compute(const SystemModel& model, std::size_t i, std::size_t j, std::size_t n, const Policies& policies);

/// Arrival rate seen by WD i's queue at node j.
double queue_arrival_rate(const SystemModel& model,
                          const DecisionVector& delta,
                          std::size_t i,
                          std::size_t j,
                          StabilityMode mode = StabilityMode::node_total);

/// Service rate minus arrival rate; the M/M/1 denominator.
double queue_slack(const SystemModel& model,
                   const DecisionVector& delta,
                   std::size_t i,
                   std::size_t j,
                   std::size_t n,
                   const Policies& policies,
                   StabilityMode mode = StabilityMode::node_total);

/// True iff the queue of WD i at node j, slice n has strictly positive slack.
bool queue_stable(const SystemModel& model,
                  const DecisionVector& delta,
                  std::size_t i,
                  std::size_t j,
                  std::size_t n,
                  const Policies& policies,
                  StabilityMode mode = StabilityMode::node_total);

/// Mean M/M/1 sojourn time 1 / (mu - lambda). Throws UnstableQueue when
/// the slack is not positive.
double mm1_execution_time(const SystemModel& model,
                          const DecisionVector& delta,
                          std::size_t i,
                          std::size_t j,
                          std::size_t n,
                          const Policies& policies,
                          StabilityMode mode = StabilityMode::node_total);

/// L_i / F_i^l.
double local_execution_time(const SystemModel& model, std::size_t i);

/// S_i / R_{i,a}: transmission time of a sole offloader with the whole AP.
double min_transmission_time(const SystemModel& model, std::size_t i, std::size_t a);

/// L_{i,n} / F_j^n. Throws InfeasibleSliceNode when F_j^n is zero.
double min_execution_time(const SystemModel& model, std::size_t i, std::size_t j, std::size_t n);

/// Which kind of edge resource an offloader set is queried for.
enum class ResourceKind
{
    access_point,
    edge_node,
};

/// WDs offloading through resource `e` (AP or node, per `kind`) in slice `n`.
std::vector<std::size_t> offloader_set(const DecisionVector& delta, ResourceKind kind, std::size_t e, std::size_t n);

double wd_cost(const SystemModel& model, const DecisionVector& delta, const Policies& policies, std::size_t i);

double slice_cost(const SystemModel& model, const DecisionVector& delta, const Policies& policies, std::size_t n);

CostBreakdown system_cost(const SystemModel& model, const DecisionVector& delta, const Policies& policies);

} // namespace sliceopt

#endif // SLICEOPT_MODEL_HPP
