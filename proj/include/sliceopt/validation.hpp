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

#ifndef SLICEOPT_VALIDATION_HPP
#define SLICEOPT_VALIDATION_HPP

#include <sliceopt/model.hpp>
#include <sliceopt/solver.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sliceopt {

struct Violation
{
    Constraint constraint{Constraint::none};
    std::string message; ///< e.g. "10c at node 3, slice 1"
};

/// Re-checks a (decision vector, policies) pair from scratch with the model
/// formulas only: decision shape, coefficient budgets, queue stability,
/// no-worse-than-local, and, when given, the claimed system cost to
/// `cost_tolerance` relative. Returns every violation found.
std::vector<Violation> validate_solution(const SystemModel& model,
                                         const DecisionVector& delta,
                                         const Policies& policies,
                                         StabilityMode stability_mode,
                                         std::optional<double> claimed_cost = std::nullopt,
                                         double cost_tolerance = 1e-9);

} // namespace sliceopt

#endif // SLICEOPT_VALIDATION_HPP
