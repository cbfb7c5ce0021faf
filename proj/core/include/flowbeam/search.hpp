#ifndef FLOWBEAM_SEARCH_HPP
#define FLOWBEAM_SEARCH_HPP

#include "flowbeam/guide.hpp"
#include "flowbeam/instance.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

namespace flowbeam {

enum class Branching { Forward, Bidirectional };

const char *toString(Branching branching) noexcept;
std::optional<Branching> parseBranching(std::string_view text) noexcept;

/// Search budget. Checked before every node expansion.
class Budget {
public:
    enum class Kind { Unlimited, Milliseconds, Expansions };

    static Budget unlimited() noexcept { return Budget(Kind::Unlimited, 0); }
    static Budget milliseconds(std::int64_t ms) noexcept { return Budget(Kind::Milliseconds, ms < 0 ? 0 : ms); }
    static Budget expansions(std::uint64_t count) noexcept
    {
        return Budget(Kind::Expansions, static_cast<std::int64_t>(count));
    }

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] std::int64_t limit() const noexcept { return limit_; }

private:
    Budget(Kind kind, std::int64_t limit) noexcept : kind_(kind), limit_(limit) {}

    Kind kind_;
    std::int64_t limit_;
};

struct SearchConfig {
    Objective objective = Objective::Makespan;
    Branching branching = Branching::Forward;
    GuideKind guide = GuideKind::G1;
    GuideConfig guideConfig;
    double growthFactor = 2.0;
    std::size_t initialBeam = 1;
    Budget budget = Budget::unlimited();
    /// Forward branching only: drop children whose bound reaches the
    /// incumbent. Off by default; any pruning then disables the optimality proof.
    bool pruneForward = false;
    /// Unused; the search is deterministic.
    std::uint64_t randomSeed = 0;

    /// Throws ConfigError for growthFactor <= 1, initialBeam == 0 or
    /// bi-directional branching on the flowtime objective.
    void validate() const;
};

/// Best complete solution known so far.
struct Incumbent {
    std::optional<Permutation> permutation;
    std::optional<Time> value;
};

struct BeamResult {
    Incumbent incumbent;
    bool truncated = false;     ///< some level held more than D children
    bool prunedByBound = false; ///< some child was dropped by the incumbent
    bool budgetExhausted = false;
    std::uint64_t expansions = 0;
};

struct SearchResult {
    std::optional<Permutation> bestPermutation;
    std::optional<Time> bestValue; ///< empty means no solution (infinity)
    std::uint64_t expansions = 0;
    std::uint64_t beamsCompleted = 0;
    std::size_t lastBeamWidth = 0;
    bool provedOptimal = false;
    std::chrono::milliseconds elapsed{0};
};

/// Called on every strict incumbent improvement with the new value.
using ImprovementCallback = std::function<void(Time value, const Permutation &permutation)>;

/// One level-synchronous beam search of width `width` from the root.
/// config.budget applies to this call alone.
BeamResult beamSearch(const Instance &instance, const SearchConfig &config, std::size_t width, Incumbent incumbent);

/// Restarting beam searches with widths initialBeam, ceil(D * growthFactor),
/// ... carrying the incumbent, until the budget runs out or a beam finishes
/// without truncation (and, for forward branching, without pruning).
SearchResult iterativeBeamSearch(const Instance &instance, const SearchConfig &config,
                                 const ImprovementCallback &onImprovement = {});

/// Next beam width: ceil(width * growth), at least width + 1.
std::size_t nextBeamWidth(std::size_t width, double growth) noexcept;

} // namespace flowbeam

#endif // FLOWBEAM_SEARCH_HPP
