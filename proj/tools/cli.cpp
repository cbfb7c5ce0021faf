#include "cli.hpp"

#include "flowbeam/errors.hpp"
#include "flowbeam/evaluate.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

namespace flowbeam::cli {

namespace {

SearchConfig baseSearchConfig(const CliConfig &config)
{
    SearchConfig search;
    search.objective = config.objective;
    search.branching = config.branching;
    search.guide = config.guide;
    search.guideConfig.idleScale = config.cscale;
    search.growthFactor = config.growth;
    return search;
}

void validate(const CliConfig &config)
{
    baseSearchConfig(config).validate();
    if (config.budgetMs && config.budgetExpansions) {
        throw ConfigError("--budget-ms and --budget-expansions are mutually exclusive");
    }
    if (config.budgetMs && *config.budgetMs < 0) {
        throw ConfigError("--budget-ms must not be negative");
    }
}

unsigned resolveWorkers(unsigned requested)
{
    if (requested > 0) {
        return requested;
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

std::string formatValue(const std::optional<Time> &value)
{
    return value ? std::to_string(*value) : "inf";
}

std::string formatPermutation(const std::optional<Permutation> &permutation)
{
    if (!permutation) {
        return "(none)";
    }
    std::string text;
    for (const JobId job : *permutation) {
        text += (text.empty() ? "" : " ") + std::to_string(job + 1);
    }
    return text;
}

std::string formatFixed2(double value)
{
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(2);
    out << value;
    std::string text = out.str();
    return text == "-0.00" ? "0.00" : text;
}

// Expands directories into their regular files (natural order); files pass through.
std::vector<std::filesystem::path> expandPaths(const std::vector<std::filesystem::path> &paths)
{
    std::vector<std::filesystem::path> files;
    for (const auto &path : paths) {
        if (std::filesystem::is_directory(path)) {
            std::vector<std::filesystem::path> entries;
            for (const auto &entry : std::filesystem::directory_iterator(path)) {
                if (entry.is_regular_file()) {
                    entries.push_back(entry.path());
                }
            }
            std::sort(entries.begin(), entries.end(), [](const auto &a, const auto &b) {
                return naturalLess(a.filename().string(), b.filename().string());
            });
            files.insert(files.end(), entries.begin(), entries.end());
        } else {
            files.push_back(path);
        }
    }
    return files;
}

struct BatchFailure {
    std::string what;
    bool internal = false;
};

} // namespace

SearchConfig makeSearchConfig(const CliConfig &config, const Instance &instance)
{
    validate(config);
    SearchConfig search = baseSearchConfig(config);
    if (config.budgetExpansions) {
        search.budget = Budget::expansions(*config.budgetExpansions);
    } else if (config.budgetMs) {
        search.budget = Budget::milliseconds(*config.budgetMs);
    } else {
        search.budget = Budget::milliseconds(timeBudgetMillis(instance.jobs(), instance.machines(), config.objective));
    }
    return search;
}

namespace {

RunRecord runOne(const Instance &instance, const CliConfig &config)
{
    const SearchResult result = iterativeBeamSearch(instance, makeSearchConfig(config, instance));
    RunRecord r;
    r.instance = instance.name();
    r.jobs = instance.jobs();
    r.machines = instance.machines();
    r.objective = config.objective;
    r.branching = config.branching;
    r.guide = config.guide;
    r.bestValue = result.bestValue;
    r.elapsedMs = result.elapsed.count();
    r.expansions = result.expansions;
    r.provedOptimal = result.provedOptimal;
    return r;
}

struct BatchSlot {
    std::optional<RunRecord> record;
    std::optional<BatchFailure> failure;
};

// Independent searches, one per instance; slots keep the input order.
std::vector<BatchSlot> runPool(const std::vector<Instance> &instances, const CliConfig &config, unsigned workers)
{
    std::vector<BatchSlot> slots(instances.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t k = next.fetch_add(1); k < instances.size(); k = next.fetch_add(1)) {
            const Instance &instance = instances[k];
            try {
                slots[k].record = runOne(instance, config);
            } catch (const InvariantViolation &e) {
                slots[k].failure = BatchFailure{instance.name() + ": " + e.what(), true};
            } catch (const std::exception &e) {
                slots[k].failure = BatchFailure{instance.name() + ": " + e.what(), false};
            }
        }
    };
    const std::size_t threads = std::min<std::size_t>(std::max(1U, workers), std::max<std::size_t>(1, instances.size()));
    if (threads <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(work);
        }
    }
    return slots;
}

} // namespace

std::vector<RunRecord> runBatch(const std::vector<Instance> &instances, const CliConfig &config, unsigned workers)
{
    validate(config);
    std::vector<RunRecord> records;
    records.reserve(instances.size());
    for (auto &slot : runPool(instances, config, workers)) {
        if (slot.failure) {
            if (slot.failure->internal) {
                throw InvariantViolation(slot.failure->what);
            }
            throw Error(slot.failure->what);
        }
        records.push_back(std::move(*slot.record));
    }
    return records;
}

int runSolve(const CliConfig &config, std::ostream &out, std::ostream &err)
{
    try {
        validate(config);
        if (config.paths.size() != 1) {
            throw ConfigError("solve expects exactly one instance file");
        }
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    std::vector<Instance> instances;
    try {
        instances = loadInstances(config.paths.front(), config.format);
    } catch (const std::exception &e) {
        err << "error: " << config.paths.front().string() << ": " << e.what() << '\n';
        return kDataError;
    }
    if (instances.size() > 1 && !config.index) {
        err << "error: " << config.paths.front().string() << " holds " << instances.size()
            << " instances; choose one with --index 0.." << instances.size() - 1 << '\n';
        return kConfigError;
    }
    const std::size_t index = config.index.value_or(0);
    if (index >= instances.size()) {
        err << "error: --index " << index << " is out of range (file holds " << instances.size() << " instances)\n";
        return kConfigError;
    }
    const Instance &instance = instances[index];

    try {
        const SearchResult result = iterativeBeamSearch(instance, makeSearchConfig(config, instance));
        out << "instance: " << instance.name() << '\n'
            << "jobs: " << instance.jobs() << '\n'
            << "machines: " << instance.machines() << '\n'
            << "objective: " << toString(config.objective) << '\n'
            << "branching: " << toString(config.branching) << '\n'
            << "guide: " << toString(config.guide) << '\n'
            << "best_value: " << formatValue(result.bestValue) << '\n'
            << "permutation: " << formatPermutation(result.bestPermutation) << '\n'
            << "elapsed_ms: " << result.elapsed.count() << '\n'
            << "expansions: " << result.expansions << '\n'
            << "beams_completed: " << result.beamsCompleted << '\n'
            << "last_beam_width: " << result.lastBeamWidth << '\n'
            << "proved_optimal: " << (result.provedOptimal ? "true" : "false") << '\n';
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
    return kSuccess;
}

int runBench(const CliConfig &config, std::ostream &out, std::ostream &err)
{
    try {
        validate(config);
    } catch (const ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    BestKnownRegistry registry;
    std::vector<std::string> failures;
    if (config.bestKnown) {
        try {
            registry = BestKnownRegistry::load(*config.bestKnown);
        } catch (const std::exception &e) {
            err << "error: " << config.bestKnown->string() << ": " << e.what() << '\n';
            return kDataError;
        }
    }

    std::vector<Instance> instances;
    for (const auto &file : expandPaths(config.paths)) {
        try {
            auto loaded = loadInstances(file, config.format);
            std::move(loaded.begin(), loaded.end(), std::back_inserter(instances));
        } catch (const std::exception &e) {
            failures.push_back(file.string() + ": " + e.what());
        }
    }
    if (instances.empty()) {
        err << "warning: no instances found\n";
    }

    std::vector<RunRecord> records;
    bool internal = false;
    for (auto &slot : runPool(instances, config, resolveWorkers(config.workers))) {
        if (slot.failure) {
            internal = internal || slot.failure->internal;
            failures.push_back(slot.failure->what);
        } else {
            records.push_back(std::move(*slot.record));
        }
    }

    const std::string report = emitReport(records, registry, ReportFormat::Csv);
    if (config.out) {
        std::ofstream file(*config.out, std::ios::binary);
        file << report;
        if (!file) {
            err << "error: cannot write " << config.out->string() << '\n';
            return kDataError;
        }
    } else {
        out << report;
    }

    if (!failures.empty()) {
        std::sort(failures.begin(), failures.end());
        err << failures.size() << " failure(s):\n";
        for (const auto &failure : failures) {
            err << "  " << failure << '\n';
        }
        return internal ? kInternalError : kDataError;
    }
    return kSuccess;
}

int runReport(const CliConfig &config, std::ostream &out, std::ostream &err)
{
    if (config.paths.size() != 1 || !config.bestKnown) {
        err << "error: report needs one records CSV and --best-known\n";
        return kConfigError;
    }
    std::vector<RunRecord> records;
    BestKnownRegistry registry;
    try {
        records = parseReportCsv(readFile(config.paths.front()));
        registry = BestKnownRegistry::load(*config.bestKnown);
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kDataError;
    }

    // (set, objective) -> instance names, in natural order.
    std::map<std::pair<std::string, Objective>, std::vector<std::string>> sets;
    std::map<std::pair<std::string, Objective>, int> newBest;
    bool incomplete = false;
    for (const RunRecord &r : records) {
        const auto key = std::pair{setNameOf(r.instance), r.objective};
        sets[key].push_back(r.instance);
        newBest.try_emplace(key, 0);
        const auto best = registry.find(r.instance, r.objective);
        if (!best) {
            err << "MissingBestKnown: " << r.instance << " (" << toString(r.objective) << ")\n";
            incomplete = true;
        } else if (r.bestValue && *r.bestValue < *best) {
            ++newBest[key];
        }
    }

    std::vector<std::pair<std::string, Objective>> order;
    for (const auto &entry : sets) {
        order.push_back(entry.first);
    }
    std::sort(order.begin(), order.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first) {
            return naturalLess(a.first, b.first);
        }
        return a.second < b.second;
    });

    std::vector<std::vector<std::string>> rows{{"set", "objective", "instances", "arpd", "new_best"}};
    int totalNewBest = 0;
    for (const auto &key : order) {
        auto &names = sets[key];
        std::sort(names.begin(), names.end(), [](const auto &a, const auto &b) { return naturalLess(a, b); });
        std::string value = "n/a";
        try {
            value = formatFixed2(arpd(records, registry, names, key.second));
        } catch (const Error &e) {
            incomplete = true;
            err << key.first << ": " << e.what() << '\n';
        }
        totalNewBest += newBest[key];
        rows.push_back({key.first, toString(key.second), std::to_string(names.size()), value,
                        std::to_string(newBest[key])});
    }

    std::vector<std::size_t> widths(rows.front().size(), 0);
    for (const auto &row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) {
            widths[k] = std::max(widths[k], row[k].size());
        }
    }
    for (const auto &row : rows) {
        std::string line;
        for (std::size_t k = 0; k < row.size(); ++k) {
            line += (k == 0 ? "" : "  ") + row[k] + std::string(widths[k] - row[k].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out << line << '\n';
    }
    out << "nb new-best-known: " << totalNewBest << '\n';
    return incomplete ? kDataError : kSuccess;
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Iterative beam search for the permutation flowshop (makespan and flowtime)", "flowbeam"};
    app.require_subcommand(1);

    CliConfig config;
    std::vector<std::string> paths;
    std::string format = "auto";
    std::string objective = "makespan";
    std::string branching = "forward";
    std::string guide = "g4";
    std::string bestKnown;
    std::string outPath;
    std::int64_t budgetMs = 0;
    std::uint64_t budgetExpansions = 0;
    std::size_t index = 0;
    double cscale = 0.0;

    const std::vector<std::string> objectives{"makespan", "flowtime"};
    const std::vector<std::string> branchings{"forward", "bidir"};
    const std::vector<std::string> guides{"g1", "g2", "g3", "g4"};
    const std::vector<std::string> formats{"taillard", "vfr", "auto"};

    auto searchOptions = [&](CLI::App *sub) {
        sub->add_option("--objective", objective, "Objective")->check(CLI::IsMember(objectives));
        sub->add_option("--branching", branching, "Branching scheme")->check(CLI::IsMember(branchings));
        sub->add_option("--guide", guide, "Guide function")->check(CLI::IsMember(guides));
        auto *ms = sub->add_option("--budget-ms", budgetMs, "Wall-clock budget per instance (ms)");
        auto *exp = sub->add_option("--budget-expansions", budgetExpansions, "Node-expansion budget per instance");
        ms->excludes(exp);
        sub->add_option("--growth", config.growth, "Beam width growth factor (> 1)");
        sub->add_option("--cscale", cscale, "Idle-time scale of g3 (default 1/m)");
        sub->add_option("--format", format, "Instance file format")->check(CLI::IsMember(formats));
    };

    CLI::App *solve = app.add_subcommand("solve", "Solve one instance");
    solve->add_option("instance", paths, "Instance file")->required()->expected(1);
    searchOptions(solve);
    solve->add_option("--index", index, "Block of a multi-instance Taillard file (0-based)");

    CLI::App *bench = app.add_subcommand("bench", "Run a benchmark batch and write a CSV report");
    bench->add_option("paths", paths, "Instance files or directories")->required();
    searchOptions(bench);
    bench->add_option("--workers", config.workers, "Concurrent searches (default: hardware threads)");
    bench->add_option("--best-known", bestKnown, "Best-known CSV (name,objective,value)");
    bench->add_option("--out", outPath, "Output CSV path (default: stdout)");

    CLI::App *report = app.add_subcommand("report", "Per-set ARPD of a bench CSV");
    report->add_option("records", paths, "CSV written by bench")->required()->expected(1);
    report->add_option("--best-known", bestKnown, "Best-known CSV")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError &e) {
        std::ostringstream msgOut;
        std::ostringstream msgErr;
        const int code = app.exit(e, msgOut, msgErr);
        out << msgOut.str();
        err << msgErr.str();
        return code == 0 ? kSuccess : kConfigError;
    }

    for (const auto &path : paths) {
        config.paths.emplace_back(path);
    }
    config.format = *parseInstanceFormat(format);
    config.objective = *parseObjective(objective);
    config.branching = *parseBranching(branching);
    config.guide = *parseGuideKind(guide);
    CLI::App *active = solve->parsed() ? solve : bench->parsed() ? bench : report;
    const auto given = [&](const char *name) {
        const CLI::Option *option = active->get_option_no_throw(name);
        return option != nullptr && option->count() > 0;
    };
    if (given("--budget-ms")) {
        config.budgetMs = budgetMs;
    }
    if (given("--budget-expansions")) {
        config.budgetExpansions = budgetExpansions;
    }
    if (given("--cscale")) {
        config.cscale = cscale;
    }
    if (given("--index")) {
        config.index = index;
    }
    if (given("--best-known")) {
        config.bestKnown = bestKnown;
    }
    if (given("--out")) {
        config.out = outPath;
    }

    if (solve->parsed()) {
        config.subcommand = Subcommand::Solve;
        return runSolve(config, out, err);
    }
    if (bench->parsed()) {
        config.subcommand = Subcommand::Bench;
        return runBench(config, out, err);
    }
    config.subcommand = Subcommand::Report;
    return runReport(config, out, err);
}

} // namespace flowbeam::cli
