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

#include <sliceopt/cli.hpp>

#include <sliceopt/io.hpp>
#include <sliceopt/montecarlo.hpp>
#include <sliceopt/scenario.hpp>
#include <sliceopt/solver.hpp>
#include <sliceopt/validation.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace sliceopt {

using nlohmann::json;

namespace {

struct CommonArgs
{
    std::string config_path;
    std::uint64_t seed{0};
    std::string method{"auto"};
    std::size_t max_rounds{100};
    std::string out_path;
};

struct SweepArgs
{
    std::size_t runs{1000};
    std::string slices{"1,2,3,4,5"};
    std::string wds{"2,4,6,8,10"};
    std::size_t threads{1};
    std::string aggregate_out;
};

std::vector<std::size_t> parse_list(const std::string& text, const char* name)
{
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos <= text.size())
    {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = text.substr(pos, comma - pos);
        std::size_t value = 0;
        const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
        if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size() || value == 0)
        {
            throw ConfigInvalid(std::string(name) + ": expected a comma-separated list of positive integers, got '"
                                + text + "'");
        }
        out.push_back(value);
        pos = comma + 1;
    }
    return out;
}

std::uint64_t max_space_from_env()
{
    const char* raw = std::getenv("SLICEOPT_MAX_SPACE");
    if (raw == nullptr || *raw == '\0')
    {
        return default_max_space;
    }
    std::uint64_t value = 0;
    const std::string text(raw);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    {
        throw ConfigInvalid("SLICEOPT_MAX_SPACE: expected a non-negative integer, got '" + text + "'");
    }
    return value;
}

MethodChoice parse_method(const std::string& m)
{
    if (m == "exhaustive")
    {
        return MethodChoice::exhaustive;
    }
    if (m == "best-response")
    {
        return MethodChoice::best_response;
    }
    return MethodChoice::automatic;
}

ScenarioConfig read_config(const std::string& path)
{
    return path.empty() ? ScenarioConfig{} : load_config(path);
}

std::string dump(const json& doc)
{
    return doc.dump(2) + "\n";
}

std::filesystem::path derived_path(const std::filesystem::path& base, const std::string& suffix)
{
    auto out = base;
    out.replace_extension();
    out += suffix;
    return out;
}

int cmd_solve(const CommonArgs& args, const std::string& inter, std::ostream& out)
{
    const auto config = read_config(args.config_path);
    const auto model = generate(config, args.seed);
    const InterMode inter_mode = inter == "equal" ? InterMode::equal_share : InterMode::optimal;

    SweepOptions options;
    options.method = parse_method(args.method);
    options.max_space = max_space_from_env();
    options.max_rounds = args.max_rounds;
    const auto solution = solve_with(model, inter_mode, config.stability_mode, options, args.seed);

    auto doc = solution_to_json(model, solution, inter_mode, config.stability_mode);
    const auto violations = validate_solution(model, solution.delta, solution.policies, config.stability_mode,
                                              solution.cost.system_cost);
    json feasibility;
    for (const char* tag : {"10a", "10b", "10c", "10d", "10e"})
    {
        feasibility[tag] = true;
    }
    for (const auto& v : violations)
    {
        feasibility[std::string(constraint_tag(v.constraint))] = false;
    }
    doc["feasibility"] = feasibility;
    doc["search_space"] = search_space_size(model);
    doc["manifest"] = make_manifest("solve", config, args.seed,
                                    {{"method", args.method},
                                     {"inter", to_string(inter_mode)},
                                     {"max_space", options.max_space},
                                     {"max_rounds", args.max_rounds}});
    write_file(args.out_path, dump(doc));

    std::size_t offloaders = 0;
    for (const auto& d : solution.delta)
    {
        offloaders += d.is_offload() ? 1 : 0;
    }
    out << "solved with " << method_name(solution.method) << ": system cost " << format_double(solution.cost.system_cost)
        << " s, " << offloaders << "/" << model.num_wds() << " offloaders -> " << args.out_path << "\n";
    return exit_code::ok;
}

SweepOptions sweep_options(const CommonArgs& args, const SweepArgs& sweep)
{
    SweepOptions options;
    options.method = parse_method(args.method);
    options.max_space = max_space_from_env();
    options.max_rounds = args.max_rounds;
    options.threads = sweep.threads;
    return options;
}

json sweep_parameters(const CommonArgs& args, const SweepArgs& sweep, const SweepOptions& options)
{
    // Thread count is deliberately absent: outputs do not depend on it.
    return {{"method", args.method},
            {"runs", sweep.runs},
            {"slices", sweep.slices},
            {"wds", sweep.wds},
            {"max_space", options.max_space},
            {"max_rounds", args.max_rounds}};
}

int cmd_sweep_gain(const CommonArgs& args, const SweepArgs& sweep, std::ostream& out)
{
    const auto config = read_config(args.config_path);
    const auto slices = parse_list(sweep.slices, "slices");
    const auto wds = parse_list(sweep.wds, "wds");
    const auto options = sweep_options(args, sweep);
    const auto report = run_gain_sweep(config, slices, wds, sweep.runs, options, args.seed);

    const std::filesystem::path runs_path = args.out_path;
    const std::filesystem::path aggregate_path
        = sweep.aggregate_out.empty() ? derived_path(runs_path, ".aggregate.csv") : std::filesystem::path(sweep.aggregate_out);

    std::ostringstream runs_csv;
    write_gain_runs_csv(runs_csv, report);
    write_file(runs_path, runs_csv.str());
    std::ostringstream aggregate_csv;
    write_gain_aggregate_csv(aggregate_csv, report);
    write_file(aggregate_path, aggregate_csv.str());

    auto manifest = make_manifest("sweep-gain", config, args.seed, sweep_parameters(args, sweep, options));
    manifest["files"] = {runs_path.filename().string(), aggregate_path.filename().string()};
    write_file(derived_path(runs_path, ".manifest.json"), dump(manifest));

    for (const auto& row : report.rows)
    {
        out << "N=" << row.num_slices << " I=" << row.num_wds << " gain " << format_double(row.mean_gain) << " ["
            << format_double(row.ci_low) << ", " << format_double(row.ci_high) << "]\n";
    }
    return exit_code::ok;
}

int cmd_sweep_offloaders(const CommonArgs& args, const SweepArgs& sweep, std::ostream& out)
{
    const auto config = read_config(args.config_path);
    const auto slices = parse_list(sweep.slices, "slices");
    const auto wds = parse_list(sweep.wds, "wds");
    const auto options = sweep_options(args, sweep);
    const auto report = run_offloader_sweep(config, slices, wds, sweep.runs, options, args.seed);

    const std::filesystem::path path = args.out_path;
    std::ostringstream csv;
    write_offloader_csv(csv, report);
    write_file(path, csv.str());

    auto manifest = make_manifest("sweep-offloaders", config, args.seed, sweep_parameters(args, sweep, options));
    manifest["files"] = {path.filename().string()};
    write_file(derived_path(path, ".manifest.json"), dump(manifest));

    for (const auto& row : report.rows)
    {
        out << "N=" << row.num_slices << " I=" << row.num_wds << " slice " << row.slice << ": "
            << format_double(row.mean_offloaders) << " offloaders\n";
    }
    return exit_code::ok;
}

int cmd_validate(const std::string& solution_path,
                 const std::string& config_path,
                 std::uint64_t seed,
                 std::ostream& out,
                 std::ostream& err)
{
    const auto config = read_config(config_path);
    const auto model = generate(config, seed);

    std::ifstream in(solution_path, std::ios::binary);
    if (!in)
    {
        throw ConfigInvalid("solution: cannot open " + solution_path);
    }
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigInvalid("solution: malformed JSON: " + std::string(e.what()));
    }

    std::vector<Violation> violations;
    try
    {
        const auto parsed = solution_from_json(doc, model);
        violations = validate_solution(model, parsed.delta, parsed.policies, config.stability_mode, parsed.system_cost);
    }
    catch (const SolutionMalformed& e)
    {
        violations.push_back({e.constraint, e.what()});
    }

    if (violations.empty())
    {
        out << "valid: all constraints hold and the cost matches\n";
        return exit_code::ok;
    }
    for (const auto& v : violations)
    {
        err << "violation: " << v.message << "\n";
    }
    return exit_code::validation_failed;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Joint slice selection and radio/compute allocation for edge offloading", "sliceopt"};
    app.require_subcommand(1);

    CommonArgs common;
    SweepArgs sweep;
    std::string inter{"optimal"};
    std::string solution_path;

    const std::vector<std::string> methods{"exhaustive", "best-response", "auto"};
    auto add_common = [&](CLI::App* sub, bool needs_out) {
        sub->add_option("--config", common.config_path, "Scenario config (JSON); defaults when omitted")
            ->check(CLI::ExistingFile);
        sub->add_option("--seed", common.seed, "Scenario seed")->required();
        if (needs_out)
        {
            sub->add_option("--method", common.method, "Solver for the decision vector")
                ->check(CLI::IsMember(methods));
            sub->add_option("--max-rounds", common.max_rounds, "Best-response round limit")
                ->check(CLI::PositiveNumber);
            sub->add_option("--out", common.out_path, "Output file")->required();
        }
    };
    auto add_sweep = [&](CLI::App* sub) {
        sub->add_option("--runs", sweep.runs, "Monte Carlo runs per cell")->check(CLI::Range(2, 1 << 30));
        sub->add_option("--slices", sweep.slices, "Comma-separated slice counts");
        sub->add_option("--wds", sweep.wds, "Comma-separated WD counts");
        sub->add_option("--threads", sweep.threads, "Worker threads")->check(CLI::PositiveNumber);
    };

    auto* solve = app.add_subcommand("solve", "Solve one generated instance and write a JSON solution");
    add_common(solve, true);
    solve->add_option("--inter", inter, "Inter-slice radio policy")->check(CLI::IsMember({"optimal", "equal"}));

    auto* gain = app.add_subcommand("sweep-gain", "Gain of the optimal inter-slice split over equal sharing");
    add_common(gain, true);
    add_sweep(gain);
    gain->add_option("--aggregate-out", sweep.aggregate_out, "Aggregate CSV (default: <out>.aggregate.csv)");

    auto* offload = app.add_subcommand("sweep-offloaders", "Offloaders per slice versus number of WDs");
    add_common(offload, true);
    add_sweep(offload);

    auto* validate = app.add_subcommand("validate", "Re-check a solution file against its regenerated instance");
    add_common(validate, false);
    validate->add_option("--solution", solution_path, "Solution JSON from `solve`")->required();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_code::ok : exit_code::config_error;
    }

    try
    {
        if (solve->parsed())
        {
            return cmd_solve(common, inter, out);
        }
        if (gain->parsed())
        {
            return cmd_sweep_gain(common, sweep, out);
        }
        if (offload->parsed())
        {
            return cmd_sweep_offloaders(common, sweep, out);
        }
        return cmd_validate(solution_path, common.config_path, common.seed, out, err);
    }
    catch (const ConfigInvalid& e)
    {
        err << "config error: " << e.what() << "\n";
        return exit_code::config_error;
    }
    catch (const SearchSpaceTooLarge& e)
    {
        err << "search space error: " << e.what() << "\n";
        return exit_code::search_space;
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace sliceopt
