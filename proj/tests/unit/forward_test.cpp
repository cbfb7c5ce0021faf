#include "flowbeam/errors.hpp"
#include "flowbeam/forward.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <numeric>
#include <random>

using namespace flowbeam;

namespace {

std::vector<Time> vec(std::span<const Time> s)
{
    return {s.begin(), s.end()};
}

using V = std::vector<Time>;

} // namespace

TEST(ForwardInsert, HandTraceOnExample)
{
    const auto ex = oracle::exampleInstance();
    ForwardNode node(ex);
    node = insertForward(ex, node, 0);
    EXPECT_EQ(vec(node.frontStarting()), (V{3, 6, 8}));
    EXPECT_EQ(vec(node.idleFront()), (V{0, 3, 6}));
    EXPECT_EQ(node.partialFlowtime(), 8);

    node = insertForward(ex, node, 1);
    EXPECT_EQ(vec(node.frontStarting()), (V{5, 10, 11}));
    EXPECT_EQ(vec(node.idleFront()), (V{0, 3, 8}));
    EXPECT_EQ(node.partialFlowtime(), 19);
    EXPECT_EQ(node.starting(), (Permutation{0, 1}));
}

TEST(ForwardInsert, FirstJobChainsFromEmptyFronts)
{
    std::mt19937_64 rng(8);
    const auto rows = oracle::randomMatrix(rng, 5, 6, 20);
    const auto inst = oracle::toInstance(rows);
    for (JobId j = 0; j < 5; ++j) {
        const auto child = insertForward(inst, ForwardNode(inst), j);
        Time prefix = 0;
        for (std::size_t i = 0; i < 6; ++i) {
            const Time before = prefix;
            prefix += rows[i][j];
            ASSERT_EQ(child.frontStarting()[i], prefix);
            ASSERT_EQ(child.idleFront()[i], i == 0 ? 0 : before);
        }
    }
}

TEST(ForwardInsert, RejectsScheduledAndUnknownJobs)
{
    const auto ex = oracle::exampleInstance();
    auto node = insertForward(ex, ForwardNode(ex), 2);
    EXPECT_THROW(insertForward(ex, node, 2), JobAlreadyScheduled);
    EXPECT_THROW(insertForward(ex, node, 9), InvalidPermutation);
}

TEST(ForwardInsert, RandomReplaysMatchGridOracle)
{
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng() % 9;
        const std::size_t m = 1 + rng() % 6;
        const auto rows = oracle::randomMatrix(rng, n, m, 30);
        const auto inst = oracle::toInstance(rows);
        Permutation order(n);
        std::iota(order.begin(), order.end(), JobId{0});
        std::shuffle(order.begin(), order.end(), rng);

        ForwardNode node(inst);
        std::vector<JobId> prefix;
        std::vector<Time> idleBefore(m, 0);
        double weighted = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            node.append(inst, order[k]);
            prefix.push_back(order[k]);

            const auto front = oracle::headFront(rows, prefix);
            const auto load = oracle::load(rows, prefix);
            const auto total = oracle::load(rows, order);
            const auto done = oracle::completions(rows, prefix);
            const double alpha = static_cast<double>(k + 1) / static_cast<double>(n);
            for (std::size_t i = 0; i < m; ++i) {
                const Time idle = front[i] - load[i];
                ASSERT_EQ(node.frontStarting()[i], front[i]);
                ASSERT_EQ(node.idleFront()[i], idle);
                ASSERT_EQ(node.remaining()[i], total[i] - load[i]);
                if (i > 0) {
                    weighted += static_cast<double>(idle - idleBefore[i])
                                * (alpha * static_cast<double>(m - 1 - i) + 1.0);
                }
                idleBefore[i] = idle;
            }
            ASSERT_EQ(node.partialFlowtime(), std::accumulate(done.begin(), done.end(), Time{0}));
            ASSERT_NEAR(node.weightedIdle(), weighted, 1e-9);
        }
        ASSERT_TRUE(node.isGoal());
    }
}

TEST(ForwardChildren, RootOfExample)
{
    const auto ex = oracle::exampleInstance();
    const auto children = childrenForward(ex, ForwardNode(ex));
    ASSERT_EQ(children.size(), 4u);
    const std::vector<V> fronts{{3, 6, 8}, {2, 6, 7}, {1, 4, 7}, {3, 4, 6}};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(children[k].starting(), (Permutation{static_cast<JobId>(k)}));
        EXPECT_EQ(vec(children[k].frontStarting()), fronts[k]);
    }
}

TEST(ForwardChildren, LastJobAndGoal)
{
    const auto ex = oracle::exampleInstance();
    ForwardNode node(ex);
    for (const JobId j : {2, 0, 3}) {
        node.append(ex, j);
    }
    const auto last = childrenForward(ex, node);
    ASSERT_EQ(last.size(), 1u);
    EXPECT_TRUE(last[0].isGoal());
    EXPECT_EQ(last[0].starting(), (Permutation{2, 0, 3, 1}));
    EXPECT_TRUE(childrenForward(ex, last[0]).empty());
}

TEST(ForwardGuide, ExampleAfterFirstJob)
{
    const auto ex = oracle::exampleInstance();
    const auto node = insertForward(ex, ForwardNode(ex), 0);
    const GuideConfig cfg;
    EXPECT_DOUBLE_EQ(guideForward(ex, node, GuideKind::G1, Objective::Makespan, cfg), 14.0);
    EXPECT_DOUBLE_EQ(guideForward(ex, node, GuideKind::G1, Objective::Flowtime, cfg), 8.0);
    EXPECT_DOUBLE_EQ(guideForward(ex, node, GuideKind::G2, Objective::Makespan, cfg), 9.0);
    // 0.25 * 14 + 0.75 * 9 / 3
    EXPECT_DOUBLE_EQ(guideForward(ex, node, GuideKind::G3, Objective::Makespan, cfg), 5.75);
    // 0.25 * 14 + 0.75 * (9.75 + 13.5)
    EXPECT_DOUBLE_EQ(guideForward(ex, node, GuideKind::G4, Objective::Makespan, cfg), 20.9375);
    EXPECT_DOUBLE_EQ(node.weightedIdle(), 9.75);
}

TEST(ForwardGuide, IdleScaleOverride)
{
    const auto ex = oracle::exampleInstance();
    const auto node = insertForward(ex, ForwardNode(ex), 0);
    GuideConfig cfg;
    cfg.idleScale = 1.0;
    EXPECT_DOUBLE_EQ(guideForward(ex, node, GuideKind::G3, Objective::Makespan, cfg), 0.25 * 14 + 0.75 * 9);
}

TEST(ForwardGuide, RootValues)
{
    std::mt19937_64 rng(2);
    const auto inst = oracle::toInstance(oracle::randomMatrix(rng, 6, 4, 20));
    const ForwardNode root(inst);
    for (const auto obj : {Objective::Makespan, Objective::Flowtime}) {
        EXPECT_EQ(guideForward(inst, root, GuideKind::G3, obj, {}), 0.0);
        EXPECT_EQ(guideForward(inst, root, GuideKind::G4, obj, {}), 0.0);
        EXPECT_EQ(guideForward(inst, root, GuideKind::G2, obj, {}), 0.0);
    }
    EXPECT_EQ(forwardBound(root.state().view(), Objective::Makespan), inst.machineSum(3));
}

TEST(ForwardBound, AdmissibleAndMonotone)
{
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + rng() % 5;
        const std::size_t m = 1 + rng() % 4;
        const auto rows = oracle::randomMatrix(rng, n, m, 20);
        const auto inst = oracle::toInstance(rows);
        Permutation order(n);
        std::iota(order.begin(), order.end(), JobId{0});
        std::shuffle(order.begin(), order.end(), rng);

        ForwardNode node(inst);
        std::vector<JobId> prefix;
        Time lastMakespan = 0;
        Time lastFlow = 0;
        for (const JobId j : order) {
            node.append(inst, j);
            prefix.push_back(j);
            const Time mk = forwardBound(node.state().view(), Objective::Makespan);
            const Time fl = forwardBound(node.state().view(), Objective::Flowtime);
            ASSERT_LE(mk, oracle::bestCompletionMakespan(rows, prefix, {}));
            ASSERT_GE(mk, lastMakespan);
            ASSERT_GE(fl, lastFlow);
            lastMakespan = mk;
            lastFlow = fl;
        }
        ASSERT_EQ(lastMakespan, oracle::makespan(rows, order));
        ASSERT_EQ(lastFlow, oracle::flowtime(rows, order));
    }
}

TEST(GuideNames, RoundTrip)
{
    for (const auto k : {GuideKind::G1, GuideKind::G2, GuideKind::G3, GuideKind::G4}) {
        EXPECT_EQ(parseGuideKind(toString(k)), k);
    }
    EXPECT_FALSE(parseGuideKind("g5"));
}
