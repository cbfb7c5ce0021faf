#include "oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace oracle {

Matrix exampleMatrix()
{
    return {{3, 2, 1, 3}, {3, 4, 3, 1}, {2, 1, 3, 2}};
}

flowbeam::Instance exampleInstance()
{
    return flowbeam::Instance::fromMachineRows("example", exampleMatrix());
}

Matrix randomMatrix(std::mt19937_64 &rng, std::size_t jobs, std::size_t machines, Time maxTime)
{
    std::uniform_int_distribution<Time> dist(0, maxTime);
    Matrix rows(machines, std::vector<Time>(jobs));
    for (auto &row : rows) {
        for (auto &cell : row) {
            cell = dist(rng);
        }
    }
    return rows;
}

flowbeam::Instance toInstance(const Matrix &rows, const char *name)
{
    return flowbeam::Instance::fromMachineRows(name, rows);
}

std::vector<Time> completions(const Matrix &rows, const std::vector<JobId> &order)
{
    const std::size_t m = rows.size();
    const std::size_t n = order.size();
    // grid[k][i]: longest path ending at position k on machine i.
    std::vector<std::vector<Time>> grid(n, std::vector<Time>(m, 0));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < m; ++i) {
            const Time above = k > 0 ? grid[k - 1][i] : 0;
            const Time left = i > 0 ? grid[k][i - 1] : 0;
            grid[k][i] = std::max(above, left) + rows[i][order[k]];
        }
    }
    std::vector<Time> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] = grid[k][m - 1];
    }
    return out;
}

Time makespan(const Matrix &rows, const std::vector<JobId> &order)
{
    const auto c = completions(rows, order);
    return c.empty() ? 0 : c.back();
}

Time flowtime(const Matrix &rows, const std::vector<JobId> &order)
{
    const auto c = completions(rows, order);
    return std::accumulate(c.begin(), c.end(), Time{0});
}

std::vector<Time> headFront(const Matrix &rows, const std::vector<JobId> &prefix)
{
    const std::size_t m = rows.size();
    std::vector<Time> front(m, 0);
    for (const JobId j : prefix) {
        std::vector<Time> next(m);
        for (std::size_t i = 0; i < m; ++i) {
            next[i] = std::max(front[i], i > 0 ? next[i - 1] : 0) + rows[i][j];
        }
        front = next;
    }
    return front;
}

std::vector<Time> tailFront(const Matrix &rows, const std::vector<JobId> &suffix)
{
    // The same grid walked from the bottom-right corner.
    const std::size_t m = rows.size();
    std::vector<Time> tail(m, 0);
    for (auto it = suffix.rbegin(); it != suffix.rend(); ++it) {
        std::vector<Time> next(m);
        for (std::size_t i = m; i-- > 0;) {
            next[i] = std::max(tail[i], i + 1 < m ? next[i + 1] : 0) + rows[i][*it];
        }
        tail = next;
    }
    return tail;
}

std::vector<Time> load(const Matrix &rows, const std::vector<JobId> &jobs)
{
    std::vector<Time> out(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (const JobId j : jobs) {
            out[i] += rows[i][j];
        }
    }
    return out;
}

Time bestCompletionMakespan(const Matrix &rows, const std::vector<JobId> &prefix, const std::vector<JobId> &suffix)
{
    const std::size_t n = rows.front().size();
    std::vector<bool> used(n, false);
    for (const JobId j : prefix) {
        used[j] = true;
    }
    for (const JobId j : suffix) {
        used[j] = true;
    }
    std::vector<JobId> middle;
    for (JobId j = 0; j < n; ++j) {
        if (!used[j]) {
            middle.push_back(j);
        }
    }
    Time best = std::numeric_limits<Time>::max();
    do {
        std::vector<JobId> order = prefix;
        order.insert(order.end(), middle.begin(), middle.end());
        order.insert(order.end(), suffix.begin(), suffix.end());
        best = std::min(best, makespan(rows, order));
    } while (std::next_permutation(middle.begin(), middle.end()));
    return best;
}

Time optimum(const Matrix &rows, flowbeam::Objective objective)
{
    std::vector<JobId> order(rows.front().size());
    std::iota(order.begin(), order.end(), JobId{0});
    Time best = std::numeric_limits<Time>::max();
    do {
        const Time v =
            objective == flowbeam::Objective::Makespan ? makespan(rows, order) : flowtime(rows, order);
        best = std::min(best, v);
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

} // namespace oracle
