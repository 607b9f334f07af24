// In-process CLI invocation and scratch files for the tests.

#ifndef SLICEOPT_TESTS_CLI_HARNESS_HPP
#define SLICEOPT_TESTS_CLI_HARNESS_HPP

#include <sliceopt/cli.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace sliceopt::testing {

struct CliResult
{
    int code{0};
    std::string out;
    std::string err;
};

inline CliResult run_tool(std::vector<std::string> args)
{
    args.insert(args.begin(), "sliceopt");
    std::vector<const char*> argv;
    for (const auto& a : args)
    {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

/// Fresh directory under the build tree, emptied on creation.
inline std::filesystem::path scratch_dir(const std::string& name)
{
    const auto dir = std::filesystem::path(SLICEOPT_TEST_TMP) / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline void spit(const std::filesystem::path& p, const std::string& text)
{
    std::ofstream(p, std::ios::binary) << text;
}

} // namespace sliceopt::testing

#endif // SLICEOPT_TESTS_CLI_HARNESS_HPP
