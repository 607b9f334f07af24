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
 * \file sliceopt/allocation.hpp
 *
 * \brief Closed-form solution of the continuous resource-sharing problem for
 *  a fixed offloading decision vector.
 *
 * Every cost term has the form c_i / x_i, where c_i is the time WD i would
 * need with the whole resource and x_i its share. Minimising sum_i c_i / x_i
 * over the simplex sum_i x_i <= 1 gives, from the stationarity condition
 * -c_i / x_i^2 + mu = 0, x_i = sqrt(c_i) / sum_k sqrt(c_k) and the minimum
 * (sum_k sqrt(c_k))^2 (the square-root rule). The bound is tight: by
 * Cauchy-Schwarz, (sum sqrt(c_i))^2 = (sum sqrt(c_i/x_i) sqrt(x_i))^2
 * <= sum(c_i/x_i) * sum(x_i).
 *
 * The rule applies twice on the radio side. Intra-slice, each (AP, slice)
 * pair collapses to s_{a,n}^2 / omega_a^n with s_{a,n} = sum sqrt(T_{i,a}).
 * Inter-slice, sum_n s_{a,n}^2 / omega_a^n is again of the same form, so the
 * optimal omega_a^n is s_{a,n} / sum_n s_{a,n} and the AP costs
 * (sum_n s_{a,n})^2.
 */

#ifndef SLICEOPT_ALLOCATION_HPP
#define SLICEOPT_ALLOCATION_HPP

#include <sliceopt/model.hpp>

#include <cstddef>
#include <span>
#include <vector>

namespace sliceopt {

enum class InterMode
{
    optimal,     ///< square-root rule across slices
    equal_share, ///< omega_a^n = 1 / N
};

struct SqrtRuleResult
{
    std::vector<double> coefficients;
    double aggregate_cost{0};
};

/// Minimises sum c_i / x_i over the unit simplex. Throws EmptyOffloaderSet
/// or NonPositiveCost.
SqrtRuleResult sqrt_rule(std::span<const double> min_times);

/// Row-major [ap][slice].
using InterRadioMatrix = std::vector<std::vector<double>>;

InterRadioMatrix optimal_inter_slice(const SystemModel& model, const DecisionVector& delta);

InterRadioMatrix equal_share_inter_slice(std::size_t num_slices, std::size_t num_aps);

struct AllocationResult
{
    Policies policies;
    double conditional_cost{0}; // seconds
};

/// Optimal intra-slice coefficients, and inter-slice coefficients per
/// `mode`, for a fixed decision vector.
AllocationResult optimal_policies_for_decision(const SystemModel& model, const DecisionVector& delta, InterMode mode);

/// Grid-search minimiser of sum c_i / x_i over the simplex discretised at
/// resolution 1 / grid_points. Lattices small enough are enumerated in full;
/// larger ones are searched coarse-to-fine, shrinking the grid step tenfold
/// per level inside a window around the incumbent. Used as an independent
/// check of sqrt_rule; limited to four entries.
SqrtRuleResult numeric_allocation_oracle(std::span<const double> min_times, std::size_t grid_points);

} // namespace sliceopt

#endif // SLICEOPT_ALLOCATION_HPP
