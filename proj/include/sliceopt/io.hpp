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
 * \file sliceopt/io.hpp
 *
 * \brief JSON config and solution documents, CSV reports.
 *
 * Files always carry canonical units (bits, seconds, GIPS, Hz). The config
 * reader additionally accepts human units through explicit key suffixes
 * (`task_size_range_mb`, `ap_bandwidths_mhz`). Doubles are written in the
 * shortest decimal form that round-trips, independent of the C locale.
 */

#ifndef SLICEOPT_IO_HPP
#define SLICEOPT_IO_HPP

#include <sliceopt/montecarlo.hpp>
#include <sliceopt/scenario.hpp>
#include <sliceopt/solver.hpp>

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace sliceopt {

inline constexpr const char* tool_name = "sliceopt";
inline constexpr const char* tool_version = "1.0.0";

/// Every key is optional; unknown keys and bad values throw ConfigInvalid
/// with the key name in the message.
ScenarioConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ScenarioConfig& config);
/// Reads and parses a config file; syntax errors become ConfigInvalid.
ScenarioConfig load_config(const std::filesystem::path& path);

std::string to_string(StabilityMode mode);
std::string to_string(InterMode mode);

/// Run manifest embedded in (or written next to) every output file.
nlohmann::json make_manifest(const std::string& command,
                             const ScenarioConfig& config,
                             std::uint64_t seed,
                             const nlohmann::json& parameters);

nlohmann::json solution_to_json(const SystemModel& model,
                                const Solution& solution,
                                InterMode inter_mode,
                                StabilityMode stability_mode);

/// Raised when a solution document is structurally broken. Carries the
/// constraint the defect maps to (10a for malformed decisions).
class SolutionMalformed : public Error
{
public:
    SolutionMalformed(Constraint c, const std::string& what)
        : Error(what)
        , constraint(c)
    {
    }
    Constraint constraint;
};

struct ParsedSolution
{
    DecisionVector delta;
    Policies policies;
    double system_cost{0};
};

ParsedSolution solution_from_json(const nlohmann::json& doc, const SystemModel& model);

/// Shortest round-trip decimal form of a binary64 value.
std::string format_double(double value);

void write_gain_runs_csv(std::ostream& os, const GainReport& report);
void write_gain_aggregate_csv(std::ostream& os, const GainReport& report);
void write_offloader_csv(std::ostream& os, const OffloaderReport& report);

/// Writes `text` to `path` in binary mode so line endings stay '\n'.
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace sliceopt

#endif // SLICEOPT_IO_HPP
