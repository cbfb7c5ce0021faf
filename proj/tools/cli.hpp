#ifndef FLOWBEAM_TOOLS_CLI_HPP
#define FLOWBEAM_TOOLS_CLI_HPP

#include "flowbeam/benchio.hpp"
#include "flowbeam/search.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace flowbeam::cli {

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kConfigError = 1,
    kDataError = 2, ///< I/O or parse failure
    kInternalError = 3,
};

enum class Subcommand { Solve, Bench, Report };

struct CliConfig {
    Subcommand subcommand = Subcommand::Solve;
    std::vector<std::filesystem::path> paths;
    InstanceFormat format = InstanceFormat::Auto;
    Objective objective = Objective::Makespan;
    Branching branching = Branching::Forward;
    GuideKind guide = GuideKind::G1;
    std::optional<std::int64_t> budgetMs;
    std::optional<std::uint64_t> budgetExpansions;
    double growth = 2.0;
    std::optional<double> cscale;
    unsigned workers = 0; ///< 0 means one per hardware thread
    std::optional<std::filesystem::path> bestKnown;
    std::optional<std::filesystem::path> out;
    /// solve: which block of a multi-instance file to solve.
    std::optional<std::size_t> index;
};

/// Search configuration for `instance`: the default time budget unless the
/// command line overrides it. Throws ConfigError.
SearchConfig makeSearchConfig(const CliConfig &config, const Instance &instance);

/// Runs one search per instance on up to `workers` threads. The result has
/// one record per instance, in input order.
std::vector<RunRecord> runBatch(const std::vector<Instance> &instances, const CliConfig &config, unsigned workers);

int runSolve(const CliConfig &config, std::ostream &out, std::ostream &err);
int runBench(const CliConfig &config, std::ostream &out, std::ostream &err);
int runReport(const CliConfig &config, std::ostream &out, std::ostream &err);

/// Parses `args` (without the program name) and dispatches.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace flowbeam::cli

#endif // FLOWBEAM_TOOLS_CLI_HPP
