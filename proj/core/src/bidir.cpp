#include "flowbeam/bidir.hpp"

#include "flowbeam/errors.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace flowbeam {

BidirState BidirState::root(const Instance &instance)
{
    const std::size_t m = instance.machines();
    BidirState state;
    state.frontStarting.assign(m, 0);
    state.idleFront.assign(m, 0);
    state.frontFinishing.assign(m, 0);
    state.idleBack.assign(m, 0);
    state.remaining.assign(instance.machineSums().begin(), instance.machineSums().end());
    return state;
}

void prependToFront(std::span<const Time> p, std::span<Time> front, std::span<Time> idle,
                    std::span<Time> remaining) noexcept
{
    const std::size_t m = front.size();
    front[m - 1] += p[m - 1];
    remaining[m - 1] -= p[m - 1];
    for (std::size_t i = m - 1; i-- > 0;) {
        if (front[i + 1] > front[i]) {
            idle[i] += front[i + 1] - front[i];
            front[i] = front[i + 1] + p[i];
        } else {
            front[i] += p[i];
        }
        remaining[i] -= p[i];
    }
}

void BidirState::appendStart(const Instance &instance, JobId job)
{
    appendToFront(instance.job(job), frontStarting, idleFront, remaining, 0.0);
    ++startingCount;
}

void BidirState::prependFinish(const Instance &instance, JobId job)
{
    prependToFront(instance.job(job), frontFinishing, idleBack, remaining);
    ++finishingCount;
}

void BidirState::insert(const Instance &instance, JobId job, Direction direction)
{
    if (direction == Direction::Forward) {
        appendStart(instance, job);
    } else {
        prependFinish(instance, job);
    }
}

Time BidirView::bound() const noexcept
{
    Time best = 0;
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        best = std::max(best, frontStarting[i] + remaining[i] + frontFinishing[i]);
    }
    return best;
}

Time BidirView::childBound(const Instance &instance, JobId job, Direction direction) const noexcept
{
    const std::size_t m = remaining.size();
    const auto p = instance.job(job);
    Time best = 0;
    if (direction == Direction::Forward) {
        Time front = 0;
        for (std::size_t i = 0; i < m; ++i) {
            front = std::max(front, frontStarting[i]) + p[i];
            best = std::max(best, front + remaining[i] - p[i] + frontFinishing[i]);
        }
    } else {
        Time front = 0;
        for (std::size_t i = m; i-- > 0;) {
            front = std::max(front, frontFinishing[i]) + p[i];
            best = std::max(best, frontStarting[i] + remaining[i] - p[i] + front);
        }
    }
    return best;
}

BidirNode::BidirNode(const Instance &instance)
    : scheduled_(instance.jobs(), 0), state_(BidirState::root(instance))
{
}

std::vector<JobId> BidirNode::unscheduled() const
{
    std::vector<JobId> jobs;
    jobs.reserve(scheduled_.size() - depth());
    for (JobId j = 0; j < scheduled_.size(); ++j) {
        if (scheduled_[j] == 0) {
            jobs.push_back(j);
        }
    }
    return jobs;
}

Permutation BidirNode::sequence() const
{
    Permutation order = starting_;
    order.insert(order.end(), finishing_.rbegin(), finishing_.rend());
    return order;
}

void BidirNode::insert(const Instance &instance, JobId job, Direction direction)
{
    if (job >= scheduled_.size()) {
        throw InvalidPermutation("job index " + std::to_string(job) + " out of range");
    }
    if (scheduled_[job] != 0) {
        throw JobAlreadyScheduled("job " + std::to_string(job) + " is already scheduled");
    }
    scheduled_[job] = 1;
    if (direction == Direction::Forward) {
        starting_.push_back(job);
    } else {
        finishing_.push_back(job);
    }
    state_.insert(instance, job, direction);
}

BidirNode insertForward(const Instance &instance, BidirNode node, JobId job)
{
    node.insert(instance, job, Direction::Forward);
    return node;
}

BidirNode insertBackward(const Instance &instance, BidirNode node, JobId job)
{
    node.insert(instance, job, Direction::Backward);
    return node;
}

void chooseBranching(const Instance &instance, const BidirView &state, std::span<const JobId> unscheduled,
                     std::optional<Time> incumbent, BranchChoice &out)
{
    const auto survives = [&](Time bound) { return !incumbent || bound < *incumbent; };

    std::size_t forwardCount = 0;
    std::size_t backwardCount = 0;
    Time forwardSum = 0;
    Time backwardSum = 0;
    out.jobs.clear();
    out.bounds.clear();
    // Backward bounds are kept in out.bounds; forward bounds are recomputed
    // only if the forward set wins.
    for (const JobId job : unscheduled) {
        const Time f = state.childBound(instance, job, Direction::Forward);
        if (survives(f)) {
            ++forwardCount;
            forwardSum += f;
        }
        const Time b = state.childBound(instance, job, Direction::Backward);
        if (survives(b)) {
            ++backwardCount;
            backwardSum += b;
            out.jobs.push_back(job);
            out.bounds.push_back(b);
        }
    }

    const bool forward = forwardCount < backwardCount || (forwardCount == backwardCount && forwardSum > backwardSum);
    if (!forward) {
        out.direction = Direction::Backward;
        out.pruned = backwardCount < unscheduled.size();
        return;
    }
    out.direction = Direction::Forward;
    out.pruned = forwardCount < unscheduled.size();
    out.jobs.clear();
    out.bounds.clear();
    for (const JobId job : unscheduled) {
        const Time f = state.childBound(instance, job, Direction::Forward);
        if (survives(f)) {
            out.jobs.push_back(job);
            out.bounds.push_back(f);
        }
    }
}

std::vector<BidirNode> childrenBidir(const Instance &instance, const BidirNode &node, std::optional<Time> incumbent)
{
    const auto open = node.unscheduled();
    BranchChoice choice;
    chooseBranching(instance, node.state().view(), open, incumbent, choice);
    std::vector<BidirNode> children;
    children.reserve(choice.jobs.size());
    for (const JobId job : choice.jobs) {
        BidirNode child = node;
        child.insert(instance, job, choice.direction);
        children.push_back(std::move(child));
    }
    return children;
}

double guideFB(const Instance &instance, const BidirView &state, GuideKind kind, const GuideConfig &config) noexcept
{
    const double alpha = static_cast<double>(state.depth()) / static_cast<double>(instance.jobs());
    const auto bound = static_cast<double>(state.bound());

    switch (kind) {
    case GuideKind::G1:
        return bound;
    case GuideKind::G2:
    case GuideKind::G3: {
        const Time idle = std::accumulate(state.idleFront.begin(), state.idleFront.end(), Time{0})
                          + std::accumulate(state.idleBack.begin(), state.idleBack.end(), Time{0});
        if (kind == GuideKind::G2) {
            return static_cast<double>(idle);
        }
        return alpha * bound + (1.0 - alpha) * config.idleScaleFor(instance.machines()) * static_cast<double>(idle);
    }
    case GuideKind::G4: {
        double share = 0.0;
        for (std::size_t i = 0; i < state.remaining.size(); ++i) {
            if (state.frontStarting[i] > 0) {
                share += static_cast<double>(state.idleFront[i]) / static_cast<double>(state.frontStarting[i]);
            }
            if (state.frontFinishing[i] > 0) {
                share += static_cast<double>(state.idleBack[i]) / static_cast<double>(state.frontFinishing[i]);
            }
        }
        return (1.0 - alpha) * bound * share + alpha * bound;
    }
    }
    return bound;
}

} // namespace flowbeam
