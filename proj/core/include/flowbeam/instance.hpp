#ifndef FLOWBEAM_INSTANCE_HPP
#define FLOWBEAM_INSTANCE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowbeam {

/// 0-based job index.
using JobId = std::uint32_t;
/// 0-based machine index.
using MachineId = std::uint32_t;
/// Processing and completion times. 64-bit everywhere so that flowtime sums
/// of the largest benchmark classes cannot overflow.
using Time = std::int64_t;

/// A job order. Must contain every job of its instance exactly once.
using Permutation = std::vector<JobId>;

enum class Objective { Makespan, Flowtime };

const char *toString(Objective objective) noexcept;
std::optional<Objective> parseObjective(std::string_view text) noexcept;

/// Permutation flowshop instance: n jobs visit m machines in the same order.
///
/// Processing times are stored job-major so that the per-job machine loop of
/// a front update reads contiguous memory. Immutable after construction.
class Instance {
public:
    /// `jobMajor[j * machines + i]` is the processing time of job j on machine i.
    Instance(std::string name, std::size_t jobs, std::size_t machines, std::vector<Time> jobMajor);

    /// rows[i][j] = processing time of job j on machine i (the layout of the
    /// usual benchmark files).
    static Instance fromMachineRows(std::string name, const std::vector<std::vector<Time>> &rows);
    /// rows[j][i] = processing time of job j on machine i.
    static Instance fromJobRows(std::string name, const std::vector<std::vector<Time>> &rows);

    [[nodiscard]] std::size_t jobs() const noexcept { return jobs_; }
    [[nodiscard]] std::size_t machines() const noexcept { return machines_; }
    [[nodiscard]] const std::string &name() const noexcept { return name_; }

    [[nodiscard]] Time p(JobId job, MachineId machine) const noexcept
    {
        return times_[static_cast<std::size_t>(job) * machines_ + machine];
    }

    /// Processing times of one job across machines 0..m-1.
    [[nodiscard]] std::span<const Time> job(JobId job) const noexcept
    {
        return {times_.data() + static_cast<std::size_t>(job) * machines_, machines_};
    }

    /// Total processing time of all jobs on a machine.
    [[nodiscard]] Time machineSum(MachineId machine) const noexcept { return machineSums_[machine]; }
    [[nodiscard]] std::span<const Time> machineSums() const noexcept { return machineSums_; }

    /// The inverse problem: machine order reversed. Solving it with the job
    /// order reversed gives the same makespan.
    [[nodiscard]] Instance reversed() const;

    Instance withName(std::string name) const;

    friend bool operator==(const Instance &, const Instance &) = default;

private:
    std::string name_;
    std::size_t jobs_;
    std::size_t machines_;
    std::vector<Time> times_;
    std::vector<Time> machineSums_;
};

/// Throws InvalidPermutation unless `order` holds every job of `instance` exactly once.
void validatePermutation(const Instance &instance, std::span<const JobId> order);

} // namespace flowbeam

#endif // FLOWBEAM_INSTANCE_HPP
