#include "flowbeam/benchio.hpp"

#include "flowbeam/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace flowbeam {

namespace {

constexpr std::string_view kTaillardSentinel = "number of jobs";
constexpr std::string_view kTaillardTimes = "processing times";

bool isSpace(char c) noexcept
{
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::optional<std::int64_t> toInteger(std::string_view token) noexcept
{
    if (token.empty() || token.front() == '+') {
        return std::nullopt;
    }
    std::int64_t value = 0;
    const auto *end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

// Whitespace tokenizer that remembers byte offsets for error messages.
class Scanner {
public:
    explicit Scanner(std::string_view bytes) : bytes_(bytes) {}

    [[nodiscard]] std::size_t offset() const noexcept { return pos_; }

    void skipSpace() noexcept
    {
        while (pos_ < bytes_.size() && isSpace(bytes_[pos_])) {
            ++pos_;
        }
    }

    [[nodiscard]] bool atEnd() noexcept
    {
        skipSpace();
        return pos_ >= bytes_.size();
    }

    /// Rest of the current line after skipping leading whitespace.
    std::string_view line() noexcept
    {
        skipSpace();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') {
            ++pos_;
        }
        return bytes_.substr(start, pos_ - start);
    }

    std::string_view peekToken() noexcept
    {
        skipSpace();
        std::size_t end = pos_;
        while (end < bytes_.size() && !isSpace(bytes_[end])) {
            ++end;
        }
        return bytes_.substr(pos_, end - pos_);
    }

    std::string_view token() noexcept
    {
        const std::string_view t = peekToken();
        pos_ += t.size();
        return t;
    }

    /// Peeks the remainder of the line the next token sits on.
    std::string_view peekLine() noexcept
    {
        skipSpace();
        const std::size_t end = bytes_.find('\n', pos_);
        return bytes_.substr(pos_, end == std::string_view::npos ? std::string_view::npos : end - pos_);
    }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::vector<std::string_view> splitTokens(std::string_view line)
{
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && isSpace(line[pos])) {
            ++pos;
        }
        const std::size_t start = pos;
        while (pos < line.size() && !isSpace(line[pos])) {
            ++pos;
        }
        if (pos > start) {
            tokens.push_back(line.substr(start, pos - start));
        }
    }
    return tokens;
}

std::vector<std::string_view> splitLines(std::string_view bytes)
{
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= bytes.size()) {
        std::size_t end = bytes.find('\n', pos);
        if (end == std::string_view::npos) {
            end = bytes.size();
        }
        std::string_view line = bytes.substr(pos, end - pos);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        pos = end + 1;
    }
    return lines;
}

std::vector<std::string_view> splitFields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = line.find(',', pos);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(pos));
            return fields;
        }
        fields.push_back(line.substr(pos, comma - pos));
        pos = comma + 1;
    }
}

std::string_view trim(std::string_view text) noexcept
{
    while (!text.empty() && isSpace(text.front())) {
        text.remove_prefix(1);
    }
    while (!text.empty() && isSpace(text.back())) {
        text.remove_suffix(1);
    }
    return text;
}

bool containsNoCase(std::string_view text, std::string_view needle) noexcept
{
    const auto it = std::search(text.begin(), text.end(), needle.begin(), needle.end(), [](char a, char b) {
        return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
    });
    return it != text.end();
}

std::string formatFixed2(double value)
{
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", value);
    std::string text(buffer);
    if (text == "-0.00") {
        text = "0.00";
    }
    return text;
}

} // namespace

std::vector<Instance> parseTaillard(std::string_view bytes, std::string_view stem)
{
    std::vector<Instance> instances;
    Scanner scan(bytes);
    for (std::size_t block = 0; !scan.atEnd(); ++block) {
        const std::size_t headerOffset = scan.offset();
        if (!containsNoCase(scan.line(), kTaillardSentinel)) {
            throw ParseError(ParseErrorKind::MalformedHeader, headerOffset, block,
                             "expected a line containing \"number of jobs\"");
        }
        std::int64_t header[5] = {};
        for (auto &field : header) {
            scan.skipSpace();
            const std::size_t at = scan.offset();
            const std::string_view t = scan.token();
            if (t.empty()) {
                throw ParseError(ParseErrorKind::MalformedHeader, at, block, "header values are missing");
            }
            const auto value = toInteger(t);
            if (!value) {
                throw ParseError(ParseErrorKind::NonIntegerToken, at, block, "'" + std::string(t) + "' in header");
            }
            field = *value;
        }
        if (header[0] <= 0 || header[1] <= 0) {
            throw ParseError(ParseErrorKind::MalformedHeader, headerOffset, block,
                             "job and machine counts must be positive");
        }
        const auto n = static_cast<std::size_t>(header[0]);
        const auto m = static_cast<std::size_t>(header[1]);

        const std::size_t timesOffset = scan.offset();
        if (!containsNoCase(scan.line(), kTaillardTimes)) {
            throw ParseError(ParseErrorKind::MalformedHeader, timesOffset, block,
                             "expected a \"processing times :\" line");
        }

        std::vector<Time> times(n * m);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                scan.skipSpace();
                const std::size_t at = scan.offset();
                if (scan.atEnd() || containsNoCase(scan.peekLine(), kTaillardSentinel)) {
                    throw ParseError(ParseErrorKind::ShortMatrix, at, block,
                                     "matrix ends after " + std::to_string(i * n + j) + " of "
                                         + std::to_string(n * m) + " values");
                }
                const std::string_view t = scan.token();
                const auto value = toInteger(t);
                if (!value || *value < 0) {
                    throw ParseError(ParseErrorKind::NonIntegerToken, at, block,
                                     "'" + std::string(t) + "' is not a non-negative integer");
                }
                times[j * m + i] = *value;
            }
        }
        instances.emplace_back(std::string(stem) + "_" + std::to_string(block), n, m, std::move(times));
    }
    return instances;
}

Instance parseVFR(std::string_view bytes, std::string name)
{
    const auto lines = splitLines(bytes);
    std::size_t offset = 0;
    std::size_t lineIndex = 0;
    auto nextLine = [&]() -> std::optional<std::pair<std::string_view, std::size_t>> {
        while (lineIndex < lines.size()) {
            const std::string_view line = lines[lineIndex++];
            const std::size_t at = offset;
            offset += line.size() + 1;
            if (!trim(line).empty()) {
                return std::pair{line, at};
            }
        }
        return std::nullopt;
    };
    auto integerAt = [](std::string_view line, std::size_t lineOffset, std::string_view token) {
        const auto value = toInteger(token);
        if (!value || *value < 0) {
            throw ParseError(ParseErrorKind::NonIntegerToken,
                             lineOffset + static_cast<std::size_t>(token.data() - line.data()), 0,
                             "'" + std::string(token) + "' is not a non-negative integer");
        }
        return *value;
    };

    const auto header = nextLine();
    if (!header) {
        throw ParseError(ParseErrorKind::MalformedHeader, 0, 0, "empty input");
    }
    const auto headerTokens = splitTokens(header->first);
    if (headerTokens.size() != 2) {
        throw ParseError(ParseErrorKind::MalformedHeader, header->second, 0, "expected \"n m\"");
    }
    const auto n = static_cast<std::size_t>(integerAt(header->first, header->second, headerTokens[0]));
    const auto m = static_cast<std::size_t>(integerAt(header->first, header->second, headerTokens[1]));
    if (n == 0 || m == 0) {
        throw ParseError(ParseErrorKind::MalformedHeader, header->second, 0, "job and machine counts must be positive");
    }

    std::vector<Time> times(n * m);
    for (std::size_t j = 0; j < n; ++j) {
        const auto row = nextLine();
        if (!row) {
            throw ParseError(ParseErrorKind::ShortMatrix, offset, 0,
                             "found " + std::to_string(j) + " job lines, expected " + std::to_string(n));
        }
        const auto tokens = splitTokens(row->first);
        if (tokens.size() != 2 * m) {
            throw ParseError(ParseErrorKind::BadPairCount, row->second, 0,
                             "job " + std::to_string(j) + " has " + std::to_string(tokens.size()) + " tokens, expected "
                                 + std::to_string(m) + " machine/time pairs");
        }
        std::int64_t previous = -1;
        for (std::size_t k = 0; k < m; ++k) {
            const std::int64_t machine = integerAt(row->first, row->second, tokens[2 * k]);
            const std::int64_t time = integerAt(row->first, row->second, tokens[2 * k + 1]);
            if (machine >= static_cast<std::int64_t>(m) || machine <= previous) {
                throw ParseError(ParseErrorKind::MachineIndexOutOfRange,
                                 row->second + static_cast<std::size_t>(tokens[2 * k].data() - row->first.data()), 0,
                                 "machine index " + std::to_string(machine) + " for job " + std::to_string(j)
                                     + " (indices must be increasing within 0.." + std::to_string(m - 1) + ")");
            }
            previous = machine;
            times[j * m + static_cast<std::size_t>(machine)] = time;
        }
    }
    return Instance(std::move(name), n, m, std::move(times));
}

std::string serializeTaillard(std::span<const Instance> instances)
{
    std::ostringstream out;
    for (const Instance &instance : instances) {
        out << "number of jobs, number of machines, initial seed, upper bound and lower bound :\n";
        out << instance.jobs() << ' ' << instance.machines() << " 0 0 0\n";
        out << "processing times :\n";
        for (MachineId i = 0; i < instance.machines(); ++i) {
            for (JobId j = 0; j < instance.jobs(); ++j) {
                out << (j == 0 ? "" : " ") << instance.p(j, i);
            }
            out << '\n';
        }
    }
    return out.str();
}

std::string serializeVFR(const Instance &instance)
{
    std::ostringstream out;
    out << instance.jobs() << ' ' << instance.machines() << '\n';
    for (JobId j = 0; j < instance.jobs(); ++j) {
        for (MachineId i = 0; i < instance.machines(); ++i) {
            out << (i == 0 ? "" : " ") << i << ' ' << instance.p(j, i);
        }
        out << '\n';
    }
    return out.str();
}

const char *toString(InstanceFormat format) noexcept
{
    switch (format) {
    case InstanceFormat::Taillard:
        return "taillard";
    case InstanceFormat::Vfr:
        return "vfr";
    case InstanceFormat::Auto:
        return "auto";
    }
    return "?";
}

std::optional<InstanceFormat> parseInstanceFormat(std::string_view text) noexcept
{
    if (text == "taillard") {
        return InstanceFormat::Taillard;
    }
    if (text == "vfr") {
        return InstanceFormat::Vfr;
    }
    if (text == "auto") {
        return InstanceFormat::Auto;
    }
    return std::nullopt;
}

InstanceFormat detectFormat(std::string_view bytes)
{
    for (const std::string_view line : splitLines(bytes)) {
        if (trim(line).empty()) {
            continue;
        }
        if (containsNoCase(line, kTaillardSentinel)) {
            return InstanceFormat::Taillard;
        }
        const auto tokens = splitTokens(line);
        if (tokens.size() == 2 && toInteger(tokens[0]) && toInteger(tokens[1])) {
            return InstanceFormat::Vfr;
        }
        break;
    }
    throw ParseError(ParseErrorKind::UnknownFormat, 0, 0,
                     "neither a Taillard header nor a VFR \"n m\" line starts the input");
}

std::string instanceStem(const std::filesystem::path &path)
{
    std::string stem = path.stem().string();
    constexpr std::string_view gap = "_Gap";
    if (stem.size() > gap.size() && stem.ends_with(gap)) {
        stem.resize(stem.size() - gap.size());
    }
    return stem;
}

std::string readFile(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "'");
    }
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<Instance> loadInstances(const std::filesystem::path &path, InstanceFormat format)
{
    const std::string bytes = readFile(path);
    if (format == InstanceFormat::Auto) {
        format = detectFormat(bytes);
    }
    const std::string stem = instanceStem(path);
    if (format == InstanceFormat::Taillard) {
        return parseTaillard(bytes, stem);
    }
    std::vector<Instance> single;
    single.push_back(parseVFR(bytes, stem));
    return single;
}

std::string setNameOf(std::string_view instanceName)
{
    const std::size_t cut = instanceName.rfind('_');
    return std::string(cut == std::string_view::npos ? instanceName : instanceName.substr(0, cut));
}

std::int64_t timeBudgetMillis(std::size_t jobs, std::size_t machines, Objective objective) noexcept
{
    const std::int64_t perCell = objective == Objective::Makespan ? 45 : 360;
    return static_cast<std::int64_t>(jobs) * static_cast<std::int64_t>(machines) * perCell;
}

void BestKnownRegistry::set(std::string name, Objective objective, Time value)
{
    if (value <= 0) {
        throw InvalidInstance("best-known value for '" + name + "' must be positive");
    }
    values_[{std::move(name), objective}] = value;
}

std::optional<Time> BestKnownRegistry::find(std::string_view name, Objective objective) const
{
    const auto it = values_.find(std::pair<std::string, Objective>{std::string(name), objective});
    if (it == values_.end()) {
        return std::nullopt;
    }
    return it->second;
}

BestKnownRegistry BestKnownRegistry::parseCsv(std::string_view bytes)
{
    BestKnownRegistry registry;
    std::size_t offset = 0;
    for (const std::string_view raw : splitLines(bytes)) {
        const std::size_t at = offset;
        offset += raw.size() + 1;
        const std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto fields = splitFields(line);
        if (fields.size() != 3) {
            throw ParseError(ParseErrorKind::MalformedCsv, at, 0, "expected name,objective,value");
        }
        if (trim(fields[0]) == "name") {
            continue;
        }
        const auto objective = parseObjective(trim(fields[1]));
        const auto value = toInteger(trim(fields[2]));
        if (!objective) {
            throw ParseError(ParseErrorKind::MalformedCsv, at, 0, "unknown objective '" + std::string(fields[1]) + "'");
        }
        if (!value || *value <= 0) {
            throw ParseError(ParseErrorKind::NonIntegerToken, at, 0,
                             "'" + std::string(fields[2]) + "' is not a positive integer");
        }
        registry.set(std::string(trim(fields[0])), *objective, *value);
    }
    return registry;
}

BestKnownRegistry BestKnownRegistry::load(const std::filesystem::path &path)
{
    return parseCsv(readFile(path));
}

std::string BestKnownRegistry::toCsv() const
{
    std::string out = "name,objective,value\n";
    for (const auto &[key, value] : values_) {
        out += key.first + "," + toString(key.second) + "," + std::to_string(value) + "\n";
    }
    return out;
}

std::optional<double> relativeDeviation(const RunRecord &record, const BestKnownRegistry &registry)
{
    const auto best = registry.find(record.instance, record.objective);
    if (!best || !record.bestValue) {
        return std::nullopt;
    }
    return 100.0 * static_cast<double>(*record.bestValue - *best) / static_cast<double>(*best);
}

double arpd(std::span<const RunRecord> records, const BestKnownRegistry &registry,
            std::span<const std::string> instanceNames, Objective objective)
{
    if (instanceNames.empty()) {
        throw MissingRecord("ARPD of an empty instance set is undefined");
    }
    double sum = 0.0;
    for (const std::string &name : instanceNames) {
        const auto record = std::find_if(records.begin(), records.end(), [&](const RunRecord &r) {
            return r.instance == name && r.objective == objective;
        });
        if (record == records.end() || !record->bestValue) {
            throw MissingRecord("no " + std::string(toString(objective)) + " solution recorded for '" + name + "'");
        }
        const auto best = registry.find(name, objective);
        if (!best) {
            throw MissingBestKnown("no best-known " + std::string(toString(objective)) + " value for '" + name + "'");
        }
        sum += static_cast<double>(*record->bestValue - *best) / static_cast<double>(*best);
    }
    return sum * 100.0 / static_cast<double>(instanceNames.size());
}

double arpd(std::span<const RunRecord> records, const BestKnownRegistry &registry, const InstanceSet &set,
            Objective objective)
{
    std::vector<std::string> names;
    names.reserve(set.instances.size());
    for (const Instance &instance : set.instances) {
        names.push_back(instance.name());
    }
    return arpd(records, registry, names, objective);
}

bool naturalLess(std::string_view a, std::string_view b) noexcept
{
    std::size_t i = 0;
    std::size_t j = 0;
    const auto digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < a.size() && j < b.size()) {
        if (digit(a[i]) && digit(b[j])) {
            std::size_t ei = i;
            std::size_t ej = j;
            while (ei < a.size() && digit(a[ei])) {
                ++ei;
            }
            while (ej < b.size() && digit(b[ej])) {
                ++ej;
            }
            std::string_view da = a.substr(i, ei - i);
            std::string_view db = b.substr(j, ej - j);
            while (da.size() > 1 && da.front() == '0') {
                da.remove_prefix(1);
            }
            while (db.size() > 1 && db.front() == '0') {
                db.remove_prefix(1);
            }
            if (da.size() != db.size()) {
                return da.size() < db.size();
            }
            if (da != db) {
                return da < db;
            }
            i = ei;
            j = ej;
            continue;
        }
        if (a[i] != b[j]) {
            return a[i] < b[j];
        }
        ++i;
        ++j;
    }
    if (a.size() - i != b.size() - j) {
        return a.size() - i < b.size() - j;
    }
    return a < b;
}

std::string emitReport(std::span<const RunRecord> records, const BestKnownRegistry &registry, ReportFormat format)
{
    std::vector<const RunRecord *> sorted;
    sorted.reserve(records.size());
    for (const RunRecord &record : records) {
        sorted.push_back(&record);
    }
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const RunRecord *a, const RunRecord *b) { return naturalLess(a->instance, b->instance); });

    std::vector<std::vector<std::string>> rows;
    rows.push_back({});
    for (const std::string_view column : splitFields(kReportHeader)) {
        rows.back().emplace_back(column);
    }
    for (const RunRecord *r : sorted) {
        const auto best = registry.find(r->instance, r->objective);
        const auto rpd = relativeDeviation(*r, registry);
        rows.push_back({r->instance, std::to_string(r->jobs), std::to_string(r->machines), toString(r->objective),
                        toString(r->branching), toString(r->guide),
                        r->bestValue ? std::to_string(*r->bestValue) : "inf", best ? std::to_string(*best) : "",
                        rpd ? formatFixed2(*rpd) : "", std::to_string(r->elapsedMs), std::to_string(r->expansions),
                        r->provedOptimal ? "true" : "false"});
    }

    std::string out;
    if (format == ReportFormat::Csv) {
        for (const auto &row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) {
                out += (k == 0 ? "" : ",") + row[k];
            }
            out += '\n';
        }
        return out;
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
            if (k > 0) {
                line += "  ";
            }
            line += row[k];
            line.append(widths[k] - row[k].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') {
            line.pop_back();
        }
        out += line + '\n';
    }
    return out;
}

std::vector<RunRecord> parseReportCsv(std::string_view bytes)
{
    std::vector<RunRecord> records;
    std::size_t offset = 0;
    bool sawHeader = false;
    for (const std::string_view raw : splitLines(bytes)) {
        const std::size_t at = offset;
        offset += raw.size() + 1;
        const std::string_view line = trim(raw);
        if (line.empty()) {
            continue;
        }
        if (!sawHeader) {
            if (line != kReportHeader) {
                throw ParseError(ParseErrorKind::MalformedCsv, at, 0, "expected the report header row");
            }
            sawHeader = true;
            continue;
        }
        const auto f = splitFields(line);
        if (f.size() != 12) {
            throw ParseError(ParseErrorKind::MalformedCsv, at, 0,
                             "expected 12 columns, found " + std::to_string(f.size()));
        }
        auto integer = [&](std::string_view field) {
            const auto value = toInteger(field);
            if (!value) {
                throw ParseError(ParseErrorKind::NonIntegerToken, at, 0, "'" + std::string(field) + "' is not an integer");
            }
            return *value;
        };
        RunRecord r;
        r.instance = std::string(f[0]);
        r.jobs = static_cast<std::size_t>(integer(f[1]));
        r.machines = static_cast<std::size_t>(integer(f[2]));
        const auto objective = parseObjective(f[3]);
        const auto branching = parseBranching(f[4]);
        const auto guide = parseGuideKind(f[5]);
        if (!objective || !branching || !guide) {
            throw ParseError(ParseErrorKind::MalformedCsv, at, 0, "unknown objective, branching or guide");
        }
        r.objective = *objective;
        r.branching = *branching;
        r.guide = *guide;
        if (f[6] != "inf") {
            r.bestValue = integer(f[6]);
        }
        r.elapsedMs = integer(f[9]);
        r.expansions = static_cast<std::uint64_t>(integer(f[10]));
        if (f[11] != "true" && f[11] != "false") {
            throw ParseError(ParseErrorKind::MalformedCsv, at, 0, "proved_optimal must be true or false");
        }
        r.provedOptimal = f[11] == "true";
        records.push_back(std::move(r));
    }
    if (!sawHeader) {
        throw ParseError(ParseErrorKind::MalformedCsv, 0, 0, "missing report header row");
    }
    return records;
}

} // namespace flowbeam
