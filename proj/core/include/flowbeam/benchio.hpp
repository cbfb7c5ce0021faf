#ifndef FLOWBEAM_BENCHIO_HPP
#define FLOWBEAM_BENCHIO_HPP

#include "flowbeam/guide.hpp"
#include "flowbeam/instance.hpp"
#include "flowbeam/search.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowbeam {

/// Instances sharing n and m, e.g. the ten instances of a Taillard class.
struct InstanceSet {
    std::string name;
    std::vector<Instance> instances;
};

/// Taillard layout: repeated blocks of
///
///     number of jobs, number of machines, initial seed, upper bound and lower bound :
///       n m seed ub lb
///     processing times :
///     <m lines of n integers>
///
/// Instances are named "<stem>_<block>" with a 0-based block index.
std::vector<Instance> parseTaillard(std::string_view bytes, std::string_view stem);

/// VFR layout: "n m", then one line per job of m "machine time" pairs with
/// 0-based, strictly increasing machine indices.
Instance parseVFR(std::string_view bytes, std::string name);

std::string serializeTaillard(std::span<const Instance> instances);
std::string serializeVFR(const Instance &instance);

enum class InstanceFormat { Taillard, Vfr, Auto };

const char *toString(InstanceFormat format) noexcept;
std::optional<InstanceFormat> parseInstanceFormat(std::string_view text) noexcept;

/// Taillard when the header sentinel appears, VFR when the first line is
/// exactly two integers. Throws ParseError(UnknownFormat) otherwise.
InstanceFormat detectFormat(std::string_view bytes);

/// Stem of `path` with a trailing "_Gap" removed (VFR files ship as
/// "VFR100_20_1_Gap.txt").
std::string instanceStem(const std::filesystem::path &path);

/// Reads and parses one benchmark file. Throws std::runtime_error-derived
/// errors for I/O failures and ParseError for content errors.
std::vector<Instance> loadInstances(const std::filesystem::path &path, InstanceFormat format = InstanceFormat::Auto);

std::string readFile(const std::filesystem::path &path);

/// Set an instance belongs to: its name up to the last underscore
/// ("tai20_5_3" -> "tai20_5", "VFR100_20_1" -> "VFR100_20").
std::string setNameOf(std::string_view instanceName);

/// Per-instance wall-clock budget: n*m*45 ms for makespan, n*m*360 ms for flowtime.
std::int64_t timeBudgetMillis(std::size_t jobs, std::size_t machines, Objective objective) noexcept;

/// Best-so-far objective values keyed by (instance name, objective).
/// CSV layout: `name,objective,value` with an optional header row.
class BestKnownRegistry {
public:
    void set(std::string name, Objective objective, Time value);
    [[nodiscard]] std::optional<Time> find(std::string_view name, Objective objective) const;
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }

    static BestKnownRegistry parseCsv(std::string_view bytes);
    static BestKnownRegistry load(const std::filesystem::path &path);
    [[nodiscard]] std::string toCsv() const;

private:
    std::map<std::pair<std::string, Objective>, Time, std::less<>> values_;
};

struct RunRecord {
    std::string instance;
    std::size_t jobs = 0;
    std::size_t machines = 0;
    Objective objective = Objective::Makespan;
    Branching branching = Branching::Forward;
    GuideKind guide = GuideKind::G1;
    std::optional<Time> bestValue;
    std::int64_t elapsedMs = 0;
    std::uint64_t expansions = 0;
    bool provedOptimal = false;

    friend bool operator==(const RunRecord &, const RunRecord &) = default;
};

/// sum over instances of (value - best) / best * 100 / |instances|.
/// Negative when the records improve on the registry. Throws MissingRecord
/// or MissingBestKnown when an instance lacks a record (or the record has no
/// solution) or a registry entry.
double arpd(std::span<const RunRecord> records, const BestKnownRegistry &registry,
            std::span<const std::string> instanceNames, Objective objective);
double arpd(std::span<const RunRecord> records, const BestKnownRegistry &registry, const InstanceSet &set,
            Objective objective);

/// 100 * (value - best) / best, or empty when either side is unknown.
std::optional<double> relativeDeviation(const RunRecord &record, const BestKnownRegistry &registry);

enum class ReportFormat { Csv, Table };

inline constexpr std::string_view kReportHeader =
    "instance,n,m,objective,branching,guide,best_value,best_known,rpd_percent,elapsed_ms,expansions,proved_optimal";

/// Rows sorted by instance name (numeric runs compare by value). Unknown
/// best-known values leave best_known and rpd_percent blank; a run without
/// a solution prints best_value as "inf".
std::string emitReport(std::span<const RunRecord> records, const BestKnownRegistry &registry, ReportFormat format);

/// Reads the CSV produced by emitReport (best_known and rpd columns are ignored).
std::vector<RunRecord> parseReportCsv(std::string_view bytes);

/// Natural ordering: digit runs compare numerically.
bool naturalLess(std::string_view a, std::string_view b) noexcept;

} // namespace flowbeam

#endif // FLOWBEAM_BENCHIO_HPP
