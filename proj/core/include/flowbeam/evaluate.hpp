#ifndef FLOWBEAM_EVALUATE_HPP
#define FLOWBEAM_EVALUATE_HPP

#include "flowbeam/instance.hpp"

#include <cstddef>
#include <span>

namespace flowbeam {

struct Evaluation {
    Time makespan = 0;
    Time flowtime = 0;

    [[nodiscard]] Time value(Objective objective) const noexcept
    {
        return objective == Objective::Makespan ? makespan : flowtime;
    }

    friend bool operator==(const Evaluation &, const Evaluation &) = default;
};

/// Simulates the permutation schedule with
/// C(j,i) = max(C(prev,i), C(j,i-1)) + p(j,i).
/// Throws InvalidPermutation for duplicate or out-of-range jobs.
Evaluation evaluate(const Instance &instance, std::span<const JobId> order);

/// Largest instance bruteForceOptimum accepts (n! enumeration).
inline constexpr std::size_t kBruteForceMaxJobs = 10;

struct OracleResult {
    Permutation permutation;
    Time value = 0;
};

/// Exhaustive enumeration of all n! permutations. Ties go to the
/// lexicographically smallest permutation. Throws InstanceTooLarge above
/// kBruteForceMaxJobs.
OracleResult bruteForceOptimum(const Instance &instance, Objective objective);

} // namespace flowbeam

#endif // FLOWBEAM_EVALUATE_HPP
