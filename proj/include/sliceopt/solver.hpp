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
 * \file sliceopt/solver.hpp
 *
 * \brief Discrete layer of the joint problem: picks the offloading decision
 *  vector, with the closed-form allocation as exact inner solver.
 *
 * Decisions of one WD are encoded as integers: 0 is Local, and the target
 * (a, j, n) maps to 1 + (a * |nodes| + j) * |slices| + n. Enumeration and
 * tie-breaking follow this order, WD 0 being the most significant digit.
 */

#ifndef SLICEOPT_SOLVER_HPP
#define SLICEOPT_SOLVER_HPP

#include <sliceopt/allocation.hpp>
#include <sliceopt/model.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sliceopt {

inline constexpr std::uint64_t default_max_space = 1'000'000;
/// Strictness margin of the queue stability check.
inline constexpr double stability_margin = 1e-9;

/// Constraint families reported by the solver and the validator.
enum class Constraint
{
    none,
    single_decision,  ///< 10a
    no_worse_than_local, ///< 10b
    queue_stability,  ///< 10c
    inter_slice_budget, ///< 10d
    intra_slice_budget, ///< 10e
    slice_node,       ///< node without capacity in the chosen slice
    degenerate,       ///< zero coefficient on a used path
    cost_mismatch,
};

/// Short tag: "10a" ... "10e", "slice-node", "degenerate", "cost".
std::string_view constraint_tag(Constraint c);

struct Evaluation
{
    bool feasible{true};
    double cost{0};
    Constraint violated{Constraint::none};
    std::string detail;
};

enum class SolveMethod
{
    exhaustive,
    best_response,
};

std::string_view method_name(SolveMethod m);

struct Solution
{
    DecisionVector delta;
    Policies policies;
    CostBreakdown cost;
    SolveMethod method{SolveMethod::exhaustive};
    std::size_t iterations{0};
    /// Conditional cost after every accepted move; starts at the initial cost.
    std::vector<double> cost_trace;
};

std::size_t options_per_wd(const SystemModel& model);
std::size_t encode_decision(const SystemModel& model, const Decision& d);
Decision decode_decision(const SystemModel& model, std::size_t code);

/// |Delta| = (1 + A |nodes| N)^I, saturated at UINT64_MAX.
std::uint64_t search_space_size(const SystemModel& model);

/// Optimal allocation for `delta`, then the queue checks on every offloader.
/// Returns the cost or the first violated constraint.
Evaluation evaluate_decision(const SystemModel& model,
                             const DecisionVector& delta,
                             InterMode inter_mode,
                             StabilityMode stability_mode);

/// Allocation-free evaluator over encoded decision vectors, reusing scratch
/// buffers. Not thread-safe; use one per thread. Agrees with
/// evaluate_decision.
class DecisionEvaluator
{
public:
    DecisionEvaluator(const SystemModel& model, InterMode inter_mode, StabilityMode stability_mode);

    Evaluation evaluate(std::span<const std::size_t> codes);

    /// Same as evaluate() without building the diagnostic string.
    bool evaluate_fast(std::span<const std::size_t> codes, double& cost);

    const SystemModel& model() const noexcept { return *model_; }

private:
    struct Target
    {
        std::size_t ap;
        std::size_t node;
        std::size_t slice;
    };

    bool run(std::span<const std::size_t> codes, double& cost, Constraint& violated, std::size_t& culprit);

    const SystemModel* model_;
    InterMode inter_mode_;
    StabilityMode stability_mode_;
    std::size_t num_aps_;
    std::size_t num_nodes_;
    std::size_t num_slices_;
    std::vector<Target> targets_;        // by code, index 0 unused
    std::vector<double> local_time_;     // [i]
    std::vector<double> sqrt_tx_;        // [i][a]
    std::vector<double> sqrt_exec_;      // [i][j][n], 0 if the node lacks capacity
    std::vector<double> capability_;     // [j][n]
    std::vector<double> instructions_;   // [i][n]
    std::vector<double> arrival_;        // [i]
    std::vector<double> radio_;          // scratch [a][n]
    std::vector<double> compute_;        // scratch [j][n]
    std::vector<double> node_arrivals_;  // scratch [j]
};

/// Enumerates the whole decision space. Throws SearchSpaceTooLarge when
/// |Delta| exceeds max_space.
Solution exhaustive_solve(const SystemModel& model,
                          InterMode inter_mode,
                          StabilityMode stability_mode,
                          std::uint64_t max_space = default_max_space);

/// Sequential best-response dynamics from the all-local vector, sweeping WDs
/// in a seeded random order each round.
Solution best_response_solve(const SystemModel& model,
                             InterMode inter_mode,
                             StabilityMode stability_mode,
                             std::size_t max_rounds,
                             std::uint64_t seed);

/// As above, starting from a given feasible decision vector.
Solution best_response_solve(const SystemModel& model,
                             InterMode inter_mode,
                             StabilityMode stability_mode,
                             std::size_t max_rounds,
                             std::uint64_t seed,
                             const DecisionVector& start);

} // namespace sliceopt

#endif // SLICEOPT_SOLVER_HPP
