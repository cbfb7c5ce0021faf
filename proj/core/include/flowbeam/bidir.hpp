#ifndef FLOWBEAM_BIDIR_HPP
#define FLOWBEAM_BIDIR_HPP

#include "flowbeam/forward.hpp"
#include "flowbeam/guide.hpp"
#include "flowbeam/instance.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace flowbeam {

enum class Direction { Forward, Backward };

/// Read-only view of the per-machine part of a bi-directional node.
struct BidirView {
    std::span<const Time> frontStarting;
    std::span<const Time> idleFront;
    std::span<const Time> frontFinishing;
    std::span<const Time> idleBack;
    std::span<const Time> remaining;
    std::size_t startingCount = 0;
    std::size_t finishingCount = 0;

    [[nodiscard]] std::size_t depth() const noexcept { return startingCount + finishingCount; }
    /// max over machines of frontStarting + remaining + frontFinishing.
    [[nodiscard]] Time bound() const noexcept;
    /// bound() of the child obtained by inserting `job`, without building it.
    [[nodiscard]] Time childBound(const Instance &instance, JobId job, Direction direction) const noexcept;
};

/// Mirror of appendToFront for a back front: machines are visited from m down to 1.
void prependToFront(std::span<const Time> p, std::span<Time> front, std::span<Time> idle,
                    std::span<Time> remaining) noexcept;

/// Per-machine part of a bi-directional node.
///
/// frontFinishing is a tail distance: the time from the moment machine i
/// starts the fixed suffix to the end of the schedule. With that convention
/// the bound is a plain per-machine sum and, once every job is placed, it
/// is exactly the makespan of the concatenated sequence.
struct BidirState {
    std::vector<Time> frontStarting;
    std::vector<Time> idleFront;
    std::vector<Time> frontFinishing;
    std::vector<Time> idleBack;
    std::vector<Time> remaining;
    std::size_t startingCount = 0;
    std::size_t finishingCount = 0;

    static BidirState root(const Instance &instance);

    [[nodiscard]] std::size_t depth() const noexcept { return startingCount + finishingCount; }

    void appendStart(const Instance &instance, JobId job);
    /// Mirror of appendStart: machines are visited from m down to 1.
    void prependFinish(const Instance &instance, JobId job);
    void insert(const Instance &instance, JobId job, Direction direction);

    [[nodiscard]] BidirView view() const noexcept
    {
        return {frontStarting, idleFront, frontFinishing, idleBack, remaining, startingCount, finishingCount};
    }
    [[nodiscard]] Time bound() const noexcept { return view().bound(); }
    [[nodiscard]] Time childBound(const Instance &instance, JobId job, Direction direction) const noexcept
    {
        return view().childBound(instance, job, direction);
    }
};

/// Partial schedule fixed at both ends.
class BidirNode {
public:
    explicit BidirNode(const Instance &instance);

    [[nodiscard]] const std::vector<JobId> &starting() const noexcept { return starting_; }
    /// Jobs fixed at the end, in insertion order: finishing()[0] is the last job of the schedule.
    [[nodiscard]] const std::vector<JobId> &finishing() const noexcept { return finishing_; }
    [[nodiscard]] bool isScheduled(JobId job) const noexcept { return scheduled_[job] != 0; }
    [[nodiscard]] const BidirState &state() const noexcept { return state_; }

    [[nodiscard]] std::span<const Time> frontStarting() const noexcept { return state_.frontStarting; }
    [[nodiscard]] std::span<const Time> idleFront() const noexcept { return state_.idleFront; }
    [[nodiscard]] std::span<const Time> frontFinishing() const noexcept { return state_.frontFinishing; }
    [[nodiscard]] std::span<const Time> idleBack() const noexcept { return state_.idleBack; }
    [[nodiscard]] std::span<const Time> remaining() const noexcept { return state_.remaining; }
    [[nodiscard]] std::size_t depth() const noexcept { return state_.depth(); }
    [[nodiscard]] std::size_t jobs() const noexcept { return scheduled_.size(); }
    [[nodiscard]] bool isGoal() const noexcept { return depth() == scheduled_.size(); }

    [[nodiscard]] std::vector<JobId> unscheduled() const;

    /// starting ++ reverse(finishing). A full permutation only at a goal node.
    [[nodiscard]] Permutation sequence() const;

    /// In-place insertion. Throws JobAlreadyScheduled.
    void insert(const Instance &instance, JobId job, Direction direction);

private:
    std::vector<JobId> starting_;
    std::vector<JobId> finishing_;
    std::vector<std::uint8_t> scheduled_;
    BidirState state_;
};

BidirNode insertForward(const Instance &instance, BidirNode node, JobId job);
BidirNode insertBackward(const Instance &instance, BidirNode node, JobId job);

[[nodiscard]] inline Time boundFB(const BidirNode &node) noexcept { return node.state().bound(); }

/// Outcome of the direction choice for one node: the surviving children of
/// the chosen direction, as (job, bound) pairs in ascending job order.
struct BranchChoice {
    Direction direction = Direction::Backward;
    std::vector<JobId> jobs;
    std::vector<Time> bounds;
    /// True when the incumbent removed at least one child of the chosen direction.
    bool pruned = false;
};

/// Builds forward and backward candidate sets over `unscheduled`, drops
/// candidates whose bound is not strictly below the incumbent, and keeps
/// the set with fewer survivors. Equal sizes go to the set with the larger
/// bound sum; a full tie goes backward.
void chooseBranching(const Instance &instance, const BidirView &state, std::span<const JobId> unscheduled,
                     std::optional<Time> incumbent, BranchChoice &out);

/// Children of `node` in the chosen direction, ascending job index. May be
/// empty when the incumbent prunes everything.
std::vector<BidirNode> childrenBidir(const Instance &instance, const BidirNode &node,
                                     std::optional<Time> incumbent);

/// Bi-directional guides. G4 weights each front's idle by its share of that
/// front's length; a front of length 0 contributes 0.
double guideFB(const Instance &instance, const BidirView &state, GuideKind kind, const GuideConfig &config) noexcept;

inline double guideFB(const Instance &instance, const BidirNode &node, GuideKind kind,
                      const GuideConfig &config) noexcept
{
    return guideFB(instance, node.state().view(), kind, config);
}

} // namespace flowbeam

#endif // FLOWBEAM_BIDIR_HPP
