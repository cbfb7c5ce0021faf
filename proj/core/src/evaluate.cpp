#include "flowbeam/evaluate.hpp"

#include "flowbeam/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <vector>

namespace flowbeam {

Evaluation evaluate(const Instance &instance, std::span<const JobId> order)
{
    validatePermutation(instance, order);
    const std::size_t m = instance.machines();
    std::vector<Time> completion(m, 0);
    Evaluation result;
    for (const JobId job : order) {
        const auto p = instance.job(job);
        completion[0] += p[0];
        for (std::size_t i = 1; i < m; ++i) {
            completion[i] = std::max(completion[i], completion[i - 1]) + p[i];
        }
        result.flowtime += completion[m - 1];
    }
    result.makespan = completion[m - 1];
    return result;
}

namespace {

// Depth-first enumeration in lexicographic order. Each level keeps the
// machine completion times of its prefix, so a leaf costs O(m).
class Enumerator {
public:
    Enumerator(const Instance &instance, Objective objective)
        : instance_(instance), objective_(objective), n_(instance.jobs()), m_(instance.machines()),
          completion_((n_ + 1) * m_, 0), flowtime_(n_ + 1, 0), used_(n_, false)
    {
        prefix_.reserve(n_);
    }

    OracleResult run()
    {
        descend(0);
        return {best_, bestValue_};
    }

private:
    void descend(std::size_t depth)
    {
        if (depth == n_) {
            const Time value = objective_ == Objective::Makespan ? completion_[depth * m_ + m_ - 1]
                                                                 : flowtime_[depth];
            if (value < bestValue_) {
                bestValue_ = value;
                best_ = prefix_;
            }
            return;
        }
        const Time *previous = &completion_[depth * m_];
        Time *next = &completion_[(depth + 1) * m_];
        for (JobId job = 0; job < n_; ++job) {
            if (used_[job]) {
                continue;
            }
            const auto p = instance_.job(job);
            next[0] = previous[0] + p[0];
            for (std::size_t i = 1; i < m_; ++i) {
                next[i] = std::max(previous[i], next[i - 1]) + p[i];
            }
            flowtime_[depth + 1] = flowtime_[depth] + next[m_ - 1];
            used_[job] = true;
            prefix_.push_back(job);
            descend(depth + 1);
            prefix_.pop_back();
            used_[job] = false;
        }
    }

    const Instance &instance_;
    Objective objective_;
    std::size_t n_;
    std::size_t m_;
    std::vector<Time> completion_;
    std::vector<Time> flowtime_;
    std::vector<bool> used_;
    Permutation prefix_;
    Permutation best_;
    Time bestValue_ = std::numeric_limits<Time>::max();
};

} // namespace

OracleResult bruteForceOptimum(const Instance &instance, Objective objective)
{
    if (instance.jobs() > kBruteForceMaxJobs) {
        throw InstanceTooLarge("brute force is limited to " + std::to_string(kBruteForceMaxJobs)
                               + " jobs, instance '" + instance.name() + "' has "
                               + std::to_string(instance.jobs()));
    }
    return Enumerator(instance, objective).run();
}

} // namespace flowbeam
