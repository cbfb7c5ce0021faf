#include "flowbeam/forward.hpp"

#include "flowbeam/errors.hpp"

#include <numeric>
#include <string>
#include <utility>

namespace flowbeam {

const char *toString(GuideKind kind) noexcept
{
    switch (kind) {
    case GuideKind::G1:
        return "g1";
    case GuideKind::G2:
        return "g2";
    case GuideKind::G3:
        return "g3";
    case GuideKind::G4:
        return "g4";
    }
    return "?";
}

std::optional<GuideKind> parseGuideKind(std::string_view text) noexcept
{
    if (text == "g1") {
        return GuideKind::G1;
    }
    if (text == "g2") {
        return GuideKind::G2;
    }
    if (text == "g3") {
        return GuideKind::G3;
    }
    if (text == "g4") {
        return GuideKind::G4;
    }
    return std::nullopt;
}

ForwardState ForwardState::root(const Instance &instance)
{
    const std::size_t m = instance.machines();
    ForwardState state;
    state.front.assign(m, 0);
    state.idle.assign(m, 0);
    state.remaining.assign(instance.machineSums().begin(), instance.machineSums().end());
    return state;
}

double appendToFront(std::span<const Time> p, std::span<Time> front, std::span<Time> idle, std::span<Time> remaining,
                     double alpha) noexcept
{
    const std::size_t m = front.size();
    double weighted = 0.0;
    front[0] += p[0];
    remaining[0] -= p[0];
    for (std::size_t i = 1; i < m; ++i) {
        if (front[i - 1] > front[i]) {
            const Time gap = front[i - 1] - front[i];
            idle[i] += gap;
            weighted += static_cast<double>(gap) * (alpha * static_cast<double>(m - 1 - i) + 1.0);
            front[i] = front[i - 1] + p[i];
        } else {
            front[i] += p[i];
        }
        remaining[i] -= p[i];
    }
    return weighted;
}

void ForwardState::append(const Instance &instance, JobId job)
{
    ++depth;
    // The idle weights use the scheduled fraction after this insertion.
    const double alpha = static_cast<double>(depth) / static_cast<double>(instance.jobs());
    weightedIdle += appendToFront(instance.job(job), front, idle, remaining, alpha);
    flowtime += front.back();
}

ForwardNode::ForwardNode(const Instance &instance)
    : scheduled_(instance.jobs(), 0), state_(ForwardState::root(instance))
{
    starting_.reserve(instance.jobs());
}

std::vector<JobId> ForwardNode::unscheduled() const
{
    std::vector<JobId> jobs;
    jobs.reserve(scheduled_.size() - starting_.size());
    for (JobId j = 0; j < scheduled_.size(); ++j) {
        if (scheduled_[j] == 0) {
            jobs.push_back(j);
        }
    }
    return jobs;
}

void ForwardNode::append(const Instance &instance, JobId job)
{
    if (job >= scheduled_.size()) {
        throw InvalidPermutation("job index " + std::to_string(job) + " out of range");
    }
    if (scheduled_[job] != 0) {
        throw JobAlreadyScheduled("job " + std::to_string(job) + " is already scheduled");
    }
    scheduled_[job] = 1;
    starting_.push_back(job);
    state_.append(instance, job);
}

ForwardNode insertForward(const Instance &instance, ForwardNode node, JobId job)
{
    node.append(instance, job);
    return node;
}

std::vector<ForwardNode> childrenForward(const Instance &instance, const ForwardNode &node)
{
    std::vector<ForwardNode> children;
    for (const JobId job : node.unscheduled()) {
        children.push_back(insertForward(instance, node, job));
    }
    return children;
}

Time forwardBound(const ForwardView &state, Objective objective) noexcept
{
    if (objective == Objective::Flowtime) {
        return state.flowtime;
    }
    return state.front.back() + state.remaining.back();
}

double guideForward(const Instance &instance, const ForwardView &state, GuideKind kind, Objective objective,
                    const GuideConfig &config) noexcept
{
    const auto m = static_cast<double>(instance.machines());
    const double alpha = static_cast<double>(state.depth) / static_cast<double>(instance.jobs());
    const auto bound = static_cast<double>(forwardBound(state, objective));
    const auto idle = static_cast<double>(std::accumulate(state.idle.begin(), state.idle.end(), Time{0}));

    switch (kind) {
    case GuideKind::G1:
        return bound;
    case GuideKind::G2:
        return idle;
    case GuideKind::G3:
        return alpha * bound + (1.0 - alpha) * config.idleScaleFor(instance.machines()) * idle;
    case GuideKind::G4:
        return alpha * bound + (1.0 - alpha) * (state.weightedIdle + m * idle / 2.0);
    }
    return bound;
}

} // namespace flowbeam
