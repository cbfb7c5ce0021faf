#ifndef FLOWBEAM_FORWARD_HPP
#define FLOWBEAM_FORWARD_HPP

#include "flowbeam/guide.hpp"
#include "flowbeam/instance.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace flowbeam {

/// Read-only view of the per-machine part of a forward node.
struct ForwardView {
    std::span<const Time> front;
    std::span<const Time> idle;
    std::span<const Time> remaining;
    double weightedIdle = 0.0;
    Time flowtime = 0;
    std::size_t depth = 0;
};

/// Appends a job with processing times `p` to a forward front in O(m).
/// Idle created on machine i (0-based) is added to idle[i]; the return value
/// is that idle weighted by alpha * (m - 1 - i) + 1.
double appendToFront(std::span<const Time> p, std::span<Time> front, std::span<Time> idle, std::span<Time> remaining,
                     double alpha) noexcept;

/// Per-machine part of a forward node. Everything a guide needs lives here,
/// so a child's guide value can be computed by copying O(m) data.
struct ForwardState {
    std::vector<Time> front;     ///< earliest availability of each machine
    std::vector<Time> idle;      ///< idle accumulated on each machine, including before its first job
    std::vector<Time> remaining; ///< processing time of unscheduled jobs on each machine
    double weightedIdle = 0.0;   ///< idle weighted towards early machines and late insertions
    Time flowtime = 0;           ///< sum of last-machine completion times of scheduled jobs
    std::size_t depth = 0;       ///< number of scheduled jobs

    static ForwardState root(const Instance &instance);

    /// Appends `job` after the scheduled prefix in O(m). Does not check that
    /// the job is unscheduled; ForwardNode does.
    void append(const Instance &instance, JobId job);

    [[nodiscard]] ForwardView view() const noexcept
    {
        return {front, idle, remaining, weightedIdle, flowtime, depth};
    }
};

/// Partial schedule built from the start.
class ForwardNode {
public:
    explicit ForwardNode(const Instance &instance);

    [[nodiscard]] const std::vector<JobId> &starting() const noexcept { return starting_; }
    [[nodiscard]] bool isScheduled(JobId job) const noexcept { return scheduled_[job] != 0; }
    [[nodiscard]] const ForwardState &state() const noexcept { return state_; }

    [[nodiscard]] std::span<const Time> frontStarting() const noexcept { return state_.front; }
    [[nodiscard]] std::span<const Time> idleFront() const noexcept { return state_.idle; }
    [[nodiscard]] std::span<const Time> remaining() const noexcept { return state_.remaining; }
    [[nodiscard]] double weightedIdle() const noexcept { return state_.weightedIdle; }
    [[nodiscard]] Time partialFlowtime() const noexcept { return state_.flowtime; }
    [[nodiscard]] std::size_t depth() const noexcept { return state_.depth; }
    [[nodiscard]] std::size_t jobs() const noexcept { return scheduled_.size(); }
    [[nodiscard]] bool isGoal() const noexcept { return starting_.size() == scheduled_.size(); }

    /// Jobs not yet scheduled, ascending.
    [[nodiscard]] std::vector<JobId> unscheduled() const;

    /// In-place insertion. Throws JobAlreadyScheduled.
    void append(const Instance &instance, JobId job);

private:
    std::vector<JobId> starting_;
    std::vector<std::uint8_t> scheduled_;
    ForwardState state_;
};

/// Copy of `node` with `job` appended. Throws JobAlreadyScheduled.
ForwardNode insertForward(const Instance &instance, ForwardNode node, JobId job);

/// One child per unscheduled job, ascending job index. Empty for a goal node.
std::vector<ForwardNode> childrenForward(const Instance &instance, const ForwardNode &node);

/// Lower bound on the objective of every completion of the state: the last
/// machine front plus its remaining work (makespan) or the partial flowtime.
Time forwardBound(const ForwardView &state, Objective objective) noexcept;

double guideForward(const Instance &instance, const ForwardView &state, GuideKind kind, Objective objective,
                    const GuideConfig &config) noexcept;

inline double guideForward(const Instance &instance, const ForwardNode &node, GuideKind kind,
                           Objective objective, const GuideConfig &config) noexcept
{
    return guideForward(instance, node.state().view(), kind, objective, config);
}

} // namespace flowbeam

#endif // FLOWBEAM_FORWARD_HPP
