#include "flowbeam/search.hpp"

#include "flowbeam/bidir.hpp"
#include "flowbeam/errors.hpp"
#include "flowbeam/evaluate.hpp"
#include "flowbeam/forward.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace flowbeam {

const char *toString(Branching branching) noexcept
{
    return branching == Branching::Forward ? "forward" : "bidir";
}

std::optional<Branching> parseBranching(std::string_view text) noexcept
{
    if (text == "forward") {
        return Branching::Forward;
    }
    if (text == "bidir" || text == "bidirectional") {
        return Branching::Bidirectional;
    }
    return std::nullopt;
}

void SearchConfig::validate() const
{
    if (!(growthFactor > 1.0) || !std::isfinite(growthFactor)) {
        throw ConfigError("growth factor must be a finite value strictly larger than 1, got "
                          + std::to_string(growthFactor));
    }
    if (initialBeam == 0) {
        throw ConfigError("initial beam width must be at least 1");
    }
    if (branching == Branching::Bidirectional && objective == Objective::Flowtime) {
        throw ConfigError("bi-directional branching only supports the makespan objective");
    }
    if (guideConfig.idleScale && !std::isfinite(*guideConfig.idleScale)) {
        throw ConfigError("idle scale must be finite");
    }
}

std::size_t nextBeamWidth(std::size_t width, double growth) noexcept
{
    constexpr auto cap = std::numeric_limits<std::size_t>::max() / 4;
    const double grown = std::ceil(static_cast<double>(width) * growth);
    if (!(grown < static_cast<double>(cap))) {
        return cap;
    }
    return std::max(width + 1, static_cast<std::size_t>(grown));
}

namespace {

using Clock = std::chrono::steady_clock;

class BudgetClock {
public:
    explicit BudgetClock(const Budget &budget) : budget_(budget), start_(Clock::now()) {}

    /// Accounts for one expansion. Returns false when the budget forbids it.
    bool tryExpand()
    {
        switch (budget_.kind()) {
        case Budget::Kind::Unlimited:
            break;
        case Budget::Kind::Expansions:
            if (static_cast<std::int64_t>(expansions_) >= budget_.limit()) {
                return false;
            }
            break;
        case Budget::Kind::Milliseconds:
            if (elapsed().count() >= budget_.limit()) {
                return false;
            }
            break;
        }
        ++expansions_;
        return true;
    }

    /// Wall-clock budgets only; expansion budgets are checked in tryExpand.
    [[nodiscard]] bool timeExpired() const
    {
        return budget_.kind() == Budget::Kind::Milliseconds && elapsed().count() >= budget_.limit();
    }

    [[nodiscard]] std::uint64_t expansions() const noexcept { return expansions_; }

    [[nodiscard]] std::chrono::milliseconds elapsed() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start_);
    }

private:
    Budget budget_;
    Clock::time_point start_;
    std::uint64_t expansions_ = 0;
};

// Owns the incumbent. Every accepted solution is re-evaluated from scratch.
class IncumbentSink {
public:
    IncumbentSink(const Instance &instance, Objective objective, Incumbent initial,
                  const ImprovementCallback *callback)
        : instance_(instance), objective_(objective), incumbent_(std::move(initial)), callback_(callback)
    {
    }

    [[nodiscard]] std::optional<Time> value() const noexcept { return incumbent_.value; }
    [[nodiscard]] const Incumbent &incumbent() const noexcept { return incumbent_; }
    Incumbent release() { return std::move(incumbent_); }

    [[nodiscard]] bool improves(Time value) const noexcept { return !incumbent_.value || value < *incumbent_.value; }

    void accept(Time value, Permutation permutation)
    {
        const Time check = evaluate(instance_, permutation).value(objective_);
        if (check != value) {
            throw InvariantViolation("search reported " + std::string(toString(objective_)) + " "
                                     + std::to_string(value) + " but the permutation evaluates to "
                                     + std::to_string(check));
        }
        incumbent_.value = value;
        incumbent_.permutation = std::move(permutation);
        if (callback_ != nullptr && *callback_) {
            (*callback_)(value, *incumbent_.permutation);
        }
    }

private:
    const Instance &instance_;
    Objective objective_;
    Incumbent incumbent_;
    const ImprovementCallback *callback_;
};

// Tagged job id: the high bit marks a backward insertion.
constexpr std::uint32_t kBackwardBit = 0x80000000u;

struct Candidate {
    double guide;
    std::uint64_t order; // parent << 32 | tagged job; generation order within a level
};

bool ranksBefore(const Candidate &a, const Candidate &b) noexcept
{
    return a.guide < b.guide || (a.guide == b.guide && a.order < b.order);
}

// Children of one level. Never holds more than 2 * width entries: when full,
// it keeps the best `width`, which cannot change the final selection.
class CandidatePool {
public:
    explicit CandidatePool(std::size_t width) : width_(width), limit_(2 * width) {}

    void clear() noexcept
    {
        items_.clear();
        dropped_ = false;
    }

    void push(double guide, std::uint32_t parent, std::uint32_t tag)
    {
        items_.push_back({guide, (std::uint64_t{parent} << 32) | tag});
        if (items_.size() >= limit_) {
            shrink();
        }
    }

    /// Keeps the best `width` candidates, sorted. Returns true if any were dropped.
    bool select()
    {
        if (items_.size() > width_) {
            shrink();
        }
        std::sort(items_.begin(), items_.end(), ranksBefore);
        return dropped_;
    }

    [[nodiscard]] bool empty() const noexcept { return items_.empty(); }
    [[nodiscard]] const std::vector<Candidate> &items() const noexcept { return items_; }

private:
    void shrink()
    {
        std::nth_element(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(width_), items_.end(),
                         ranksBefore);
        items_.resize(width_);
        dropped_ = true;
    }

    std::size_t width_;
    std::size_t limit_;
    std::vector<Candidate> items_;
    bool dropped_ = false;
};

// All nodes of one level in flat arrays: `stride` machine values and `depth`
// tagged jobs per node. Beams of a million nodes stay within a few hundred MB.
struct PackedLevel {
    std::size_t stride = 0;
    std::size_t depth = 0;
    std::size_t count = 0;
    std::vector<Time> times;
    std::vector<std::uint32_t> jobs;
    std::vector<double> weighted; // forward only
    std::vector<Time> flowtime;   // forward only

    void reset(std::size_t newDepth, std::size_t expected)
    {
        depth = newDepth;
        count = 0;
        times.clear();
        jobs.clear();
        weighted.clear();
        flowtime.clear();
        times.reserve(expected * stride);
        jobs.reserve(expected * depth);
    }

    [[nodiscard]] std::span<const Time> block(std::size_t k) const noexcept { return {times.data() + k * stride, stride}; }
    [[nodiscard]] std::span<const std::uint32_t> jobsOf(std::size_t k) const noexcept
    {
        return {jobs.data() + k * depth, depth};
    }

    // Appends a copy of node k of `parent` plus `tag`; returns its machine block.
    std::span<Time> pushChild(const PackedLevel &parent, std::size_t k, std::uint32_t tag)
    {
        const auto src = parent.block(k);
        times.insert(times.end(), src.begin(), src.end());
        const auto seq = parent.jobsOf(k);
        jobs.insert(jobs.end(), seq.begin(), seq.end());
        jobs.push_back(tag);
        ++count;
        return {times.data() + (count - 1) * stride, stride};
    }
};

struct LevelFlags {
    bool truncated = false;
    bool pruned = false;
};

// Level loop shared by both branchings. `expand(level, k, pool, flags)`
// pushes the non-goal children of node k and hands goals to the sink;
// `materialize(level, order, next)` appends a kept child to `next`.
template <class Expand, class Materialize>
bool runLevels(PackedLevel root, std::size_t width, BudgetClock &clock, LevelFlags &flags, Expand &&expand,
               Materialize &&materialize)
{
    PackedLevel level = std::move(root);
    PackedLevel next;
    next.stride = level.stride;
    CandidatePool pool(width);
    while (level.count > 0) {
        pool.clear();
        for (std::size_t k = 0; k < level.count; ++k) {
            if (!clock.tryExpand()) {
                return false;
            }
            expand(level, static_cast<std::uint32_t>(k), pool, flags);
        }
        if (!pool.empty() && clock.timeExpired()) {
            return false;
        }
        if (pool.select()) {
            flags.truncated = true;
        }
        next.reset(level.depth + 1, pool.items().size());
        for (const Candidate &c : pool.items()) {
            materialize(level, c.order, next);
        }
        std::swap(level, next);
    }
    return true;
}

std::uint32_t parentOf(std::uint64_t order) noexcept { return static_cast<std::uint32_t>(order >> 32); }
std::uint32_t tagOf(std::uint64_t order) noexcept { return static_cast<std::uint32_t>(order); }

bool forwardBeam(const Instance &instance, const SearchConfig &config, std::size_t width, IncumbentSink &sink,
                 BudgetClock &clock, LevelFlags &flags)
{
    const std::size_t n = instance.jobs();
    const std::size_t m = instance.machines();

    PackedLevel root;
    root.stride = 3 * m;
    root.reset(0, 1);
    root.times.assign(3 * m, 0);
    std::copy(instance.machineSums().begin(), instance.machineSums().end(), root.times.begin() + 2 * m);
    root.weighted.push_back(0.0);
    root.flowtime.push_back(0);
    root.count = 1;

    std::vector<Time> scratch(3 * m);
    std::vector<std::uint8_t> mark(n);
    const auto split = [m](std::span<Time> b) {
        return std::tuple{b.subspan(0, m), b.subspan(m, m), b.subspan(2 * m, m)};
    };

    auto expand = [&](const PackedLevel &level, std::uint32_t k, CandidatePool &pool, LevelFlags &levelFlags) {
        std::fill(mark.begin(), mark.end(), 0);
        for (const std::uint32_t job : level.jobsOf(k)) {
            mark[job] = 1;
        }
        const std::size_t depth = level.depth + 1;
        const double alpha = static_cast<double>(depth) / static_cast<double>(n);
        const auto parent = level.block(k);
        for (JobId job = 0; job < n; ++job) {
            if (mark[job] != 0) {
                continue;
            }
            std::copy(parent.begin(), parent.end(), scratch.begin());
            auto [front, idle, remaining] = split(scratch);
            const double weighted = level.weighted[k] + appendToFront(instance.job(job), front, idle, remaining, alpha);
            const Time flowtime = level.flowtime[k] + front.back();
            if (depth == n) {
                const Time value = config.objective == Objective::Makespan ? front.back() : flowtime;
                if (sink.improves(value)) {
                    const auto seq = level.jobsOf(k);
                    Permutation order(seq.begin(), seq.end());
                    order.push_back(job);
                    sink.accept(value, std::move(order));
                }
                continue;
            }
            const ForwardView view{front, idle, remaining, weighted, flowtime, depth};
            if (config.pruneForward && sink.value() && forwardBound(view, config.objective) >= *sink.value()) {
                levelFlags.pruned = true;
                continue;
            }
            pool.push(guideForward(instance, view, config.guide, config.objective, config.guideConfig), k, job);
        }
    };
    auto materialize = [&](const PackedLevel &level, std::uint64_t order, PackedLevel &next) {
        const std::uint32_t k = parentOf(order);
        const JobId job = tagOf(order);
        auto [front, idle, remaining] = split(next.pushChild(level, k, job));
        const double alpha = static_cast<double>(next.depth) / static_cast<double>(n);
        next.weighted.push_back(level.weighted[k] + appendToFront(instance.job(job), front, idle, remaining, alpha));
        next.flowtime.push_back(level.flowtime[k] + front.back());
    };
    return runLevels(std::move(root), width, clock, flags, expand, materialize);
}

bool bidirBeam(const Instance &instance, const SearchConfig &config, std::size_t width, IncumbentSink &sink,
               BudgetClock &clock, LevelFlags &flags)
{
    const std::size_t n = instance.jobs();
    const std::size_t m = instance.machines();

    // Block layout: frontStarting, idleFront, frontFinishing, idleBack, remaining.
    PackedLevel root;
    root.stride = 5 * m;
    root.reset(0, 1);
    root.times.assign(5 * m, 0);
    std::copy(instance.machineSums().begin(), instance.machineSums().end(), root.times.begin() + 4 * m);
    root.count = 1;

    const auto apply = [&](std::span<Time> b, JobId job, Direction direction) {
        if (direction == Direction::Forward) {
            appendToFront(instance.job(job), b.subspan(0, m), b.subspan(m, m), b.subspan(4 * m, m), 0.0);
        } else {
            prependToFront(instance.job(job), b.subspan(2 * m, m), b.subspan(3 * m, m), b.subspan(4 * m, m));
        }
    };
    const auto viewOf = [m](std::span<const Time> b, std::size_t starting, std::size_t finishing) {
        return BidirView{b.subspan(0, m),     b.subspan(m, m), b.subspan(2 * m, m), b.subspan(3 * m, m),
                         b.subspan(4 * m, m), starting,        finishing};
    };

    std::vector<Time> scratch(5 * m);
    std::vector<std::uint8_t> mark(n);
    std::vector<JobId> open;
    open.reserve(n);
    BranchChoice choice;

    auto expand = [&](const PackedLevel &level, std::uint32_t k, CandidatePool &pool, LevelFlags &levelFlags) {
        std::fill(mark.begin(), mark.end(), 0);
        std::size_t starting = 0;
        for (const std::uint32_t tag : level.jobsOf(k)) {
            mark[tag & ~kBackwardBit] = 1;
            starting += (tag & kBackwardBit) == 0 ? 1 : 0;
        }
        open.clear();
        for (JobId job = 0; job < n; ++job) {
            if (mark[job] == 0) {
                open.push_back(job);
            }
        }
        const auto parent = level.block(k);
        chooseBranching(instance, viewOf(parent, starting, level.depth - starting), open, sink.value(), choice);
        levelFlags.pruned = levelFlags.pruned || choice.pruned;
        const bool backward = choice.direction == Direction::Backward;
        const std::uint32_t bit = backward ? kBackwardBit : 0;
        for (std::size_t c = 0; c < choice.jobs.size(); ++c) {
            const JobId job = choice.jobs[c];
            const Time bound = choice.bounds[c];
            if (level.depth + 1 == n) {
                // Fronts meet and no work remains: the bound is the makespan.
                if (sink.improves(bound)) {
                    Permutation order;
                    Permutation tail;
                    for (const std::uint32_t tag : level.jobsOf(k)) {
                        ((tag & kBackwardBit) == 0 ? order : tail).push_back(tag & ~kBackwardBit);
                    }
                    (backward ? tail : order).push_back(job);
                    order.insert(order.end(), tail.rbegin(), tail.rend());
                    sink.accept(bound, std::move(order));
                }
                continue;
            }
            double guide = static_cast<double>(bound);
            if (config.guide != GuideKind::G1) {
                std::copy(parent.begin(), parent.end(), scratch.begin());
                apply(scratch, job, choice.direction);
                const std::size_t childStarting = starting + (backward ? 0 : 1);
                guide = guideFB(instance, viewOf(scratch, childStarting, level.depth + 1 - childStarting),
                                config.guide, config.guideConfig);
            }
            pool.push(guide, k, job | bit);
        }
    };
    auto materialize = [&](const PackedLevel &level, std::uint64_t order, PackedLevel &next) {
        const std::uint32_t tag = tagOf(order);
        const auto direction = (tag & kBackwardBit) != 0 ? Direction::Backward : Direction::Forward;
        apply(next.pushChild(level, parentOf(order), tag), tag & ~kBackwardBit, direction);
    };
    return runLevels(std::move(root), width, clock, flags, expand, materialize);
}

bool runBeam(const Instance &instance, const SearchConfig &config, std::size_t width, IncumbentSink &sink,
             BudgetClock &clock, LevelFlags &flags)
{
    if (config.branching == Branching::Forward) {
        return forwardBeam(instance, config, width, sink, clock, flags);
    }
    return bidirBeam(instance, config, width, sink, clock, flags);
}

} // namespace

BeamResult beamSearch(const Instance &instance, const SearchConfig &config, std::size_t width, Incumbent incumbent)
{
    config.validate();
    if (width == 0) {
        throw ConfigError("beam width must be at least 1");
    }
    if (incumbent.permutation) {
        const Time value = evaluate(instance, *incumbent.permutation).value(config.objective);
        if (incumbent.value && *incumbent.value != value) {
            throw InvariantViolation("incumbent value does not match its permutation");
        }
        incumbent.value = value;
    }
    BudgetClock clock(config.budget);
    IncumbentSink sink(instance, config.objective, std::move(incumbent), nullptr);
    LevelFlags flags;
    const bool finished = runBeam(instance, config, width, sink, clock, flags);

    BeamResult result;
    result.incumbent = sink.release();
    result.truncated = flags.truncated;
    result.prunedByBound = flags.pruned;
    result.budgetExhausted = !finished;
    result.expansions = clock.expansions();
    return result;
}

SearchResult iterativeBeamSearch(const Instance &instance, const SearchConfig &config,
                                 const ImprovementCallback &onImprovement)
{
    config.validate();
    BudgetClock clock(config.budget);
    IncumbentSink sink(instance, config.objective, {}, &onImprovement);

    SearchResult result;
    std::size_t width = config.initialBeam;
    while (true) {
        result.lastBeamWidth = width;
        LevelFlags flags;
        if (!runBeam(instance, config, width, sink, clock, flags)) {
            break;
        }
        ++result.beamsCompleted;
        if (!flags.truncated) {
            // A wider beam would explore the same tree again.
            result.provedOptimal = config.branching == Branching::Bidirectional || !flags.pruned;
            break;
        }
        width = nextBeamWidth(width, config.growthFactor);
    }

    Incumbent best = sink.release();
    result.bestPermutation = std::move(best.permutation);
    result.bestValue = best.value;
    result.expansions = clock.expansions();
    result.elapsed = clock.elapsed();
    return result;
}

} // namespace flowbeam
