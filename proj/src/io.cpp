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

#include <sliceopt/io.hpp>

#include <sliceopt/random.hpp>

#include <array>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <set>

namespace sliceopt {

using nlohmann::json;

namespace {

constexpr double bits_per_megabyte = 8e6;
constexpr double hz_per_megahertz = 1e6;

const std::set<std::string>& known_config_keys()
{
    static const std::set<std::string> keys{
        "num_wds",
        "num_aps",
        "num_coins",
        "num_mecs",
        "num_slices",
        "wd_gips_range",
        "wd_power_range",
        "coin_gips_range",
        "mec_gips",
        "task_size_range_mb",
        "task_size_range_bits",
        "ap_bandwidths_mhz",
        "ap_bandwidths_hz",
        "coin_distance",
        "mec_distance",
        "wd_ap_distance_range",
        "arrival_rate_range",
        "instructions_per_megabyte",
        "slice_instruction_jitter",
        "path_loss_exponent",
        "reference_loss_db",
        "noise_psd_w_per_hz",
        "stability_mode",
        "split_mode",
    };
    return keys;
}

[[noreturn]] void bad_key(const std::string& key, const std::string& why)
{
    throw ConfigInvalid(key + ": " + why);
}

void read_count(const json& doc, const char* key, std::size_t& target)
{
    if (!doc.contains(key))
    {
        return;
    }
    const auto& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0)
    {
        bad_key(key, "expected a non-negative integer");
    }
    target = v.get<std::size_t>();
}

void read_number(const json& doc, const char* key, double& target)
{
    if (!doc.contains(key))
    {
        return;
    }
    const auto& v = doc.at(key);
    if (!v.is_number())
    {
        bad_key(key, "expected a number");
    }
    target = v.get<double>();
}

void read_list(const json& doc, const char* key, std::vector<double>& target, double scale = 1.0)
{
    if (!doc.contains(key))
    {
        return;
    }
    const auto& v = doc.at(key);
    if (!v.is_array())
    {
        bad_key(key, "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& x : v)
    {
        if (!x.is_number())
        {
            bad_key(key, "expected an array of numbers");
        }
        out.push_back(x.get<double>() * scale);
    }
    target = std::move(out);
}

void read_range(const json& doc, const char* key, Range& target, double scale = 1.0)
{
    if (!doc.contains(key))
    {
        return;
    }
    std::vector<double> values;
    read_list(doc, key, values, scale);
    if (values.size() != 2)
    {
        bad_key(key, "expected [min, max]");
    }
    target = Range{values[0], values[1]};
}

json range_json(const Range& r)
{
    return json::array({r.min, r.max});
}

} // namespace

std::string to_string(StabilityMode mode)
{
    return mode == StabilityMode::node_total ? "node_total" : "per_wd_share";
}

std::string to_string(InterMode mode)
{
    return mode == InterMode::optimal ? "optimal" : "equal";
}

ScenarioConfig config_from_json(const json& doc)
{
    if (!doc.is_object())
    {
        throw ConfigInvalid("config: top level must be a JSON object");
    }
    for (const auto& [key, value] : doc.items())
    {
        if (!known_config_keys().contains(key))
        {
            bad_key(key, "unknown key");
        }
    }
    for (const auto& [mb, raw] : {std::pair{"task_size_range_mb", "task_size_range_bits"},
                                  std::pair{"ap_bandwidths_mhz", "ap_bandwidths_hz"}})
    {
        if (doc.contains(mb) && doc.contains(raw))
        {
            bad_key(mb, std::string("conflicts with ") + raw);
        }
    }

    ScenarioConfig c;
    read_count(doc, "num_wds", c.num_wds);
    read_count(doc, "num_aps", c.num_aps);
    read_count(doc, "num_coins", c.num_coins);
    read_count(doc, "num_mecs", c.num_mecs);
    read_count(doc, "num_slices", c.num_slices);
    read_range(doc, "wd_gips_range", c.wd_gips_range);
    read_range(doc, "wd_power_range", c.wd_power_range);
    read_range(doc, "coin_gips_range", c.coin_gips_range);
    read_number(doc, "mec_gips", c.mec_gips);
    read_range(doc, "task_size_range_mb", c.task_size_range_bits, bits_per_megabyte);
    read_range(doc, "task_size_range_bits", c.task_size_range_bits);
    read_list(doc, "ap_bandwidths_mhz", c.ap_bandwidths_hz, hz_per_megahertz);
    read_list(doc, "ap_bandwidths_hz", c.ap_bandwidths_hz);
    read_number(doc, "coin_distance", c.coin_distance);
    read_number(doc, "mec_distance", c.mec_distance);
    read_range(doc, "wd_ap_distance_range", c.wd_ap_distance_range);
    read_range(doc, "arrival_rate_range", c.arrival_rate_range);
    read_number(doc, "instructions_per_megabyte", c.instructions_per_megabyte);
    read_number(doc, "slice_instruction_jitter", c.slice_instruction_jitter);
    read_number(doc, "path_loss_exponent", c.channel.path_loss_exponent);
    read_number(doc, "reference_loss_db", c.channel.reference_loss_db);
    read_number(doc, "noise_psd_w_per_hz", c.channel.noise_psd_w_per_hz);

    if (doc.contains("stability_mode"))
    {
        const auto& v = doc.at("stability_mode");
        if (v == "node_total")
        {
            c.stability_mode = StabilityMode::node_total;
        }
        else if (v == "per_wd_share")
        {
            c.stability_mode = StabilityMode::per_wd_share;
        }
        else
        {
            bad_key("stability_mode", "expected \"node_total\" or \"per_wd_share\"");
        }
    }
    if (doc.contains("split_mode"))
    {
        const auto& v = doc.at("split_mode");
        if (v == "equal")
        {
            c.split_mode = SplitMode::equal;
        }
        else if (v == "dirichlet")
        {
            c.split_mode = SplitMode::dirichlet;
        }
        else
        {
            bad_key("split_mode", "expected \"equal\" or \"dirichlet\"");
        }
    }

    validate_config(c);
    return c;
}

json config_to_json(const ScenarioConfig& c)
{
    json doc;
    doc["num_wds"] = c.num_wds;
    doc["num_aps"] = c.num_aps;
    doc["num_coins"] = c.num_coins;
    doc["num_mecs"] = c.num_mecs;
    doc["num_slices"] = c.num_slices;
    doc["wd_gips_range"] = range_json(c.wd_gips_range);
    doc["wd_power_range"] = range_json(c.wd_power_range);
    doc["coin_gips_range"] = range_json(c.coin_gips_range);
    doc["mec_gips"] = c.mec_gips;
    doc["task_size_range_bits"] = range_json(c.task_size_range_bits);
    doc["ap_bandwidths_hz"] = c.ap_bandwidths_hz;
    doc["coin_distance"] = c.coin_distance;
    doc["mec_distance"] = c.mec_distance;
    doc["wd_ap_distance_range"] = range_json(c.wd_ap_distance_range);
    doc["arrival_rate_range"] = range_json(c.arrival_rate_range);
    doc["instructions_per_megabyte"] = c.instructions_per_megabyte;
    doc["slice_instruction_jitter"] = c.slice_instruction_jitter;
    doc["path_loss_exponent"] = c.channel.path_loss_exponent;
    doc["reference_loss_db"] = c.channel.reference_loss_db;
    doc["noise_psd_w_per_hz"] = c.channel.noise_psd_w_per_hz;
    doc["stability_mode"] = to_string(c.stability_mode);
    doc["split_mode"] = c.split_mode == SplitMode::equal ? "equal" : "dirichlet";
    return doc;
}

ScenarioConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw ConfigInvalid("config: cannot open " + path.string());
    }
    json doc;
    try
    {
        doc = json::parse(in);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigInvalid("config: malformed JSON in " + path.string() + ": " + e.what());
    }
    return config_from_json(doc);
}

json make_manifest(const std::string& command, const ScenarioConfig& config, std::uint64_t seed, const json& parameters)
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    std::array<char, 32> stamp{};
    std::strftime(stamp.data(), stamp.size(), "%Y-%m-%dT%H:%M:%SZ", &utc);

    json m;
    m["tool"] = tool_name;
    m["version"] = tool_version;
    m["rng"] = std::string(rng_algorithm_id);
    m["seed"] = seed;
    m["command"] = command;
    m["parameters"] = parameters;
    m["config"] = config_to_json(config);
    m["timestamp"] = std::string(stamp.data());
    return m;
}

json solution_to_json(const SystemModel& model, const Solution& solution, InterMode inter_mode, StabilityMode stability_mode)
{
    json doc;
    doc["method"] = std::string(method_name(solution.method));
    doc["iterations"] = solution.iterations;
    doc["inter_mode"] = to_string(inter_mode);
    doc["stability_mode"] = to_string(stability_mode);
    doc["dimensions"] = {{"wds", model.num_wds()},
                         {"aps", model.num_aps()},
                         {"nodes", model.num_nodes()},
                         {"slices", model.num_slices()}};

    json decisions = json::array();
    for (std::size_t i = 0; i < solution.delta.size(); ++i)
    {
        const auto& d = solution.delta[i];
        if (d.is_local())
        {
            decisions.push_back({{"wd", i}, {"local", true}});
        }
        else
        {
            const auto& t = d.target();
            decisions.push_back({{"wd", i}, {"local", false}, {"ap", t.ap}, {"node", t.node}, {"slice", t.slice}});
        }
    }
    doc["decisions"] = std::move(decisions);

    const auto& p = solution.policies;
    json omega = json::array();
    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        json row = json::array();
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            row.push_back(p.inter_radio(a, n));
        }
        omega.push_back(std::move(row));
    }
    doc["inter_radio"] = std::move(omega);

    json radio = json::array();
    json compute = json::array();
    for (std::size_t n = 0; n < model.num_slices(); ++n)
    {
        json per_ap = json::array();
        for (std::size_t a = 0; a < model.num_aps(); ++a)
        {
            json v = json::array();
            for (std::size_t i = 0; i < model.num_wds(); ++i)
            {
                v.push_back(p.intra_radio(n, a, i));
            }
            per_ap.push_back(std::move(v));
        }
        radio.push_back(std::move(per_ap));

        json per_node = json::array();
        for (std::size_t j = 0; j < model.num_nodes(); ++j)
        {
            json v = json::array();
            for (std::size_t i = 0; i < model.num_wds(); ++i)
            {
                v.push_back(p.intra_compute(n, j, i));
            }
            per_node.push_back(std::move(v));
        }
        compute.push_back(std::move(per_node));
    }
    doc["intra_radio"] = std::move(radio);
    doc["intra_compute"] = std::move(compute);

    doc["cost"] = {{"wd_costs", solution.cost.wd_costs},
                   {"slice_costs", solution.cost.slice_costs},
                   {"local_total", solution.cost.local_total},
                   {"system_cost", solution.cost.system_cost}};
    return doc;
}

namespace {

const json& require_key(const json& doc, const char* key, Constraint c)
{
    if (!doc.is_object() || !doc.contains(key))
    {
        throw SolutionMalformed(c, std::string("missing key '") + key + "'");
    }
    return doc.at(key);
}

std::size_t index_field(const json& entry, const char* key)
{
    const auto& v = require_key(entry, key, Constraint::single_decision);
    if (!v.is_number_integer() || v.get<long long>() < 0)
    {
        throw SolutionMalformed(Constraint::single_decision,
                                std::string("10a: decision field '") + key + "' must be a non-negative integer");
    }
    return v.get<std::size_t>();
}

double number(const json& v, Constraint c, const std::string& where)
{
    if (!v.is_number())
    {
        throw SolutionMalformed(c, where + ": expected a number");
    }
    return v.get<double>();
}

} // namespace

ParsedSolution solution_from_json(const json& doc, const SystemModel& model)
{
    ParsedSolution out;

    const auto& decisions = require_key(doc, "decisions", Constraint::single_decision);
    if (!decisions.is_array() || decisions.size() != model.num_wds())
    {
        throw SolutionMalformed(Constraint::single_decision,
                                "10a: expected exactly one decision per wd (" + std::to_string(model.num_wds()) + ")");
    }
    std::vector<bool> seen(model.num_wds(), false);
    out.delta.resize(model.num_wds());
    for (const auto& entry : decisions)
    {
        const std::size_t wd = index_field(entry, "wd");
        if (wd >= model.num_wds() || seen[wd])
        {
            throw SolutionMalformed(Constraint::single_decision,
                                    "10a: wd " + std::to_string(wd) + " has zero or several decisions");
        }
        seen[wd] = true;
        const auto& local = require_key(entry, "local", Constraint::single_decision);
        if (!local.is_boolean())
        {
            throw SolutionMalformed(Constraint::single_decision, "10a: 'local' must be a boolean");
        }
        const bool has_target = entry.contains("ap") || entry.contains("node") || entry.contains("slice");
        if (local.get<bool>())
        {
            if (has_target)
            {
                throw SolutionMalformed(Constraint::single_decision,
                                        "10a: wd " + std::to_string(wd) + " is both local and offloading");
            }
            out.delta[wd] = Decision::local();
        }
        else
        {
            out.delta[wd]
                = Decision::offload(index_field(entry, "ap"), index_field(entry, "node"), index_field(entry, "slice"));
        }
    }
    try
    {
        check_decisions(model, out.delta);
    }
    catch (const InvalidModel& e)
    {
        throw SolutionMalformed(Constraint::single_decision, std::string("10a: ") + e.what());
    }

    out.policies = Policies(model);
    const auto& omega = require_key(doc, "inter_radio", Constraint::inter_slice_budget);
    if (!omega.is_array() || omega.size() != model.num_aps())
    {
        throw SolutionMalformed(Constraint::inter_slice_budget, "10d: inter_radio needs one row per ap");
    }
    for (std::size_t a = 0; a < model.num_aps(); ++a)
    {
        if (!omega[a].is_array() || omega[a].size() != model.num_slices())
        {
            throw SolutionMalformed(Constraint::inter_slice_budget,
                                    "10d: inter_radio row " + std::to_string(a) + " needs one entry per slice");
        }
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            out.policies.inter_radio(a, n) = number(omega[a][n], Constraint::inter_slice_budget, "10d: inter_radio");
        }
    }

    auto read_cube = [&](const char* key, std::size_t resources, auto&& slot) {
        const auto& cube = require_key(doc, key, Constraint::intra_slice_budget);
        const std::string where = std::string("10e: ") + key;
        if (!cube.is_array() || cube.size() != model.num_slices())
        {
            throw SolutionMalformed(Constraint::intra_slice_budget, where + " needs one block per slice");
        }
        for (std::size_t n = 0; n < model.num_slices(); ++n)
        {
            if (!cube[n].is_array() || cube[n].size() != resources)
            {
                throw SolutionMalformed(Constraint::intra_slice_budget, where + " has a wrong resource count");
            }
            for (std::size_t e = 0; e < resources; ++e)
            {
                if (!cube[n][e].is_array() || cube[n][e].size() != model.num_wds())
                {
                    throw SolutionMalformed(Constraint::intra_slice_budget, where + " needs one entry per wd");
                }
                for (std::size_t i = 0; i < model.num_wds(); ++i)
                {
                    slot(n, e, i) = number(cube[n][e][i], Constraint::intra_slice_budget, where);
                }
            }
        }
    };
    read_cube("intra_radio", model.num_aps(),
              [&](std::size_t n, std::size_t a, std::size_t i) -> double& { return out.policies.intra_radio(n, a, i); });
    read_cube("intra_compute", model.num_nodes(), [&](std::size_t n, std::size_t j, std::size_t i) -> double& {
        return out.policies.intra_compute(n, j, i);
    });

    const auto& cost = require_key(doc, "cost", Constraint::cost_mismatch);
    out.system_cost = number(require_key(cost, "system_cost", Constraint::cost_mismatch), Constraint::cost_mismatch,
                             "cost: system_cost");
    return out;
}

std::string format_double(double value)
{
    std::array<char, 64> buffer{};
    const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), result.ptr);
}

void write_gain_runs_csv(std::ostream& os, const GainReport& report)
{
    os << "num_slices,num_wds,run,gain,method\n";
    for (const auto& r : report.runs)
    {
        os << r.num_slices << ',' << r.num_wds << ',' << r.run << ',' << format_double(r.gain) << ','
           << method_name(r.method) << '\n';
    }
}

void write_gain_aggregate_csv(std::ostream& os, const GainReport& report)
{
    os << "num_slices,num_wds,mean_gain,ci_low,ci_high,runs\n";
    for (const auto& r : report.rows)
    {
        os << r.num_slices << ',' << r.num_wds << ',' << format_double(r.mean_gain) << ','
           << format_double(r.ci_low) << ',' << format_double(r.ci_high) << ',' << r.runs << '\n';
    }
}

void write_offloader_csv(std::ostream& os, const OffloaderReport& report)
{
    os << "num_slices,num_wds,slice,mean_offloaders,ci_low,ci_high\n";
    for (const auto& r : report.rows)
    {
        os << r.num_slices << ',' << r.num_wds << ',' << r.slice << ',' << format_double(r.mean_offloaders) << ','
           << format_double(r.ci_low) << ',' << format_double(r.ci_high) << '\n';
    }
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
    {
        throw Error("cannot write " + path.string());
    }
    out << text;
    if (!out)
    {
        throw Error("failed writing " + path.string());
    }
}

} // namespace sliceopt
