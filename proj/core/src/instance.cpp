#include "flowbeam/instance.hpp"

#include "flowbeam/errors.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace flowbeam {

const char *toString(Objective objective) noexcept
{
    switch (objective) {
    case Objective::Makespan:
        return "makespan";
    case Objective::Flowtime:
        return "flowtime";
    }
    return "?";
}

std::optional<Objective> parseObjective(std::string_view text) noexcept
{
    if (text == "makespan") {
        return Objective::Makespan;
    }
    if (text == "flowtime") {
        return Objective::Flowtime;
    }
    return std::nullopt;
}

Instance::Instance(std::string name, std::size_t jobs, std::size_t machines, std::vector<Time> jobMajor)
    : name_(std::move(name)), jobs_(jobs), machines_(machines), times_(std::move(jobMajor)),
      machineSums_(machines, 0)
{
    if (jobs_ == 0 || machines_ == 0) {
        throw InvalidInstance("instance '" + name_ + "' needs at least one job and one machine");
    }
    if (times_.size() != jobs_ * machines_) {
        throw InvalidInstance("instance '" + name_ + "' has " + std::to_string(times_.size())
                              + " processing times, expected " + std::to_string(jobs_ * machines_));
    }
    for (std::size_t j = 0; j < jobs_; ++j) {
        for (std::size_t i = 0; i < machines_; ++i) {
            const Time t = times_[j * machines_ + i];
            if (t < 0) {
                throw InvalidInstance("instance '" + name_ + "' has a negative processing time for job "
                                      + std::to_string(j) + " on machine " + std::to_string(i));
            }
            machineSums_[i] += t;
        }
    }
}

Instance Instance::fromMachineRows(std::string name, const std::vector<std::vector<Time>> &rows)
{
    const std::size_t m = rows.size();
    const std::size_t n = m == 0 ? 0 : rows.front().size();
    std::vector<Time> times(n * m);
    for (std::size_t i = 0; i < m; ++i) {
        if (rows[i].size() != n) {
            throw InvalidInstance("machine row " + std::to_string(i) + " has " + std::to_string(rows[i].size())
                                  + " entries, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) {
            times[j * m + i] = rows[i][j];
        }
    }
    return Instance(std::move(name), n, m, std::move(times));
}

Instance Instance::fromJobRows(std::string name, const std::vector<std::vector<Time>> &rows)
{
    const std::size_t n = rows.size();
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    std::vector<Time> times;
    times.reserve(n * m);
    for (std::size_t j = 0; j < n; ++j) {
        if (rows[j].size() != m) {
            throw InvalidInstance("job row " + std::to_string(j) + " has " + std::to_string(rows[j].size())
                                  + " entries, expected " + std::to_string(m));
        }
        times.insert(times.end(), rows[j].begin(), rows[j].end());
    }
    return Instance(std::move(name), n, m, std::move(times));
}

Instance Instance::reversed() const
{
    std::vector<Time> times(times_.size());
    for (std::size_t j = 0; j < jobs_; ++j) {
        std::reverse_copy(times_.begin() + static_cast<std::ptrdiff_t>(j * machines_),
                          times_.begin() + static_cast<std::ptrdiff_t>((j + 1) * machines_),
                          times.begin() + static_cast<std::ptrdiff_t>(j * machines_));
    }
    return Instance(name_ + "_reversed", jobs_, machines_, std::move(times));
}

Instance Instance::withName(std::string name) const
{
    Instance copy = *this;
    copy.name_ = std::move(name);
    return copy;
}

void validatePermutation(const Instance &instance, std::span<const JobId> order)
{
    const std::size_t n = instance.jobs();
    if (order.size() != n) {
        throw InvalidPermutation("permutation has " + std::to_string(order.size()) + " jobs, instance '"
                                 + instance.name() + "' has " + std::to_string(n));
    }
    std::vector<bool> seen(n, false);
    for (const JobId job : order) {
        if (job >= n) {
            throw InvalidPermutation("job index " + std::to_string(job) + " out of range for "
                                     + std::to_string(n) + " jobs");
        }
        if (seen[job]) {
            throw InvalidPermutation("job index " + std::to_string(job) + " appears twice");
        }
        seen[job] = true;
    }
}

} // namespace flowbeam
