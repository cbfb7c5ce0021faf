#include "flowbeam/benchio.hpp"
#include "flowbeam/errors.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

using namespace flowbeam;

namespace {

const std::filesystem::path kData = FLOWBEAM_DATA_DIR;

// Taillard's generator: Lehmer LCG, values drawn machine by machine.
oracle::Matrix taillardMatrix(std::int64_t seed, std::size_t jobs, std::size_t machines)
{
    constexpr std::int64_t a = 16807, b = 127773, c = 2836, mod = 2147483647;
    const auto next = [&] {
        const std::int64_t k = seed / b;
        seed = a * (seed % b) - k * c;
        if (seed < 0) {
            seed += mod;
        }
        return 1 + static_cast<oracle::Time>(static_cast<double>(seed) / static_cast<double>(mod) * 99.0);
    };
    oracle::Matrix rows(machines, std::vector<oracle::Time>(jobs));
    for (auto &row : rows) {
        for (auto &cell : row) {
            cell = next();
        }
    }
    return rows;
}

std::string taillardBlock(std::size_t n, std::size_t m, const std::string &body)
{
    return "number of jobs, number of machines, initial seed, upper bound and lower bound :\n " + std::to_string(n)
           + " " + std::to_string(m) + " 1 0 0\nprocessing times :\n" + body;
}

ParseErrorKind parseKind(auto &&fn)
{
    try {
        fn();
    } catch (const ParseError &e) {
        return e.kind();
    }
    ADD_FAILURE() << "no ParseError thrown";
    return ParseErrorKind::UnknownFormat;
}

RunRecord record(std::string name, Objective obj, std::optional<Time> value)
{
    RunRecord r;
    r.instance = std::move(name);
    r.objective = obj;
    r.bestValue = value;
    return r;
}

} // namespace

TEST(Taillard, SingleBlock)
{
    std::mt19937_64 rng(1);
    const auto rows = oracle::randomMatrix(rng, 20, 5, 99);
    std::string body;
    for (const auto &row : rows) {
        for (const auto v : row) {
            body += " " + std::to_string(v);
        }
        body += "\n";
    }
    const auto parsed = parseTaillard(taillardBlock(20, 5, body), "t");
    ASSERT_EQ(parsed.size(), 1u);
    EXPECT_EQ(parsed[0].name(), "t_0");
    EXPECT_EQ(parsed[0], oracle::toInstance(rows, "t_0"));
}

TEST(Taillard, ShippedClassMatchesGenerator)
{
    const std::int64_t seeds[] = {873654221, 379008056, 1866992158, 216771124, 495070989,
                                  402959317, 1369363414, 2021925980, 573109518, 88325120};
    const auto set = loadInstances(kData / "taillard" / "tai20_5.txt");
    ASSERT_EQ(set.size(), 10u);
    for (std::size_t k = 0; k < 10; ++k) {
        EXPECT_EQ(set[k].name(), "tai20_5_" + std::to_string(k));
        EXPECT_EQ(set[k].jobs(), 20u);
        EXPECT_EQ(set[k].machines(), 5u);
        EXPECT_EQ(set[k], oracle::toInstance(taillardMatrix(seeds[k], 20, 5), set[k].name().c_str()));
    }
}

TEST(Taillard, Errors)
{
    EXPECT_EQ(parseKind([] { parseTaillard(taillardBlock(3, 2, "1 2 3\n"), "t"); }), ParseErrorKind::ShortMatrix);
    EXPECT_EQ(parseKind([] { parseTaillard(taillardBlock(3, 2, "1 2 3\n4 x 6\n"), "t"); }),
              ParseErrorKind::NonIntegerToken);
    EXPECT_EQ(parseKind([] { parseTaillard("hello\n", "t"); }), ParseErrorKind::MalformedHeader);
    // A second header where the first block still needs values.
    EXPECT_EQ(parseKind([] { parseTaillard(taillardBlock(2, 2, "1 2\n") + taillardBlock(2, 2, "1 2\n3 4\n"), "t"); }),
              ParseErrorKind::ShortMatrix);
}

TEST(Taillard, ErrorsCarryBlockAndOffset)
{
    const std::string good = taillardBlock(2, 2, "1 2\n3 4\n");
    const std::string bad = taillardBlock(2, 2, "1 2\n3 y\n");
    try {
        parseTaillard(good + bad, "t");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.block(), 1u);
        EXPECT_EQ(e.offset(), good.size() + bad.find('y'));
    }
}

TEST(Taillard, RoundTrip)
{
    std::mt19937_64 rng(9);
    std::vector<Instance> set;
    for (int k = 0; k < 3; ++k) {
        set.push_back(oracle::toInstance(oracle::randomMatrix(rng, 7, 4, 99), ("r_" + std::to_string(k)).c_str()));
    }
    EXPECT_EQ(parseTaillard(serializeTaillard(set), "r"), set);
}

TEST(Vfr, ExampleEncoding)
{
    const std::string text = "4 3\n0 3 1 3 2 2\n0 2 1 4 2 1\n0 1 1 3 2 3\n0 3 1 1 2 2\n";
    EXPECT_EQ(parseVFR(text, "example"), oracle::exampleInstance());
    EXPECT_EQ(detectFormat(text), InstanceFormat::Vfr);
    EXPECT_EQ(parseVFR(serializeVFR(oracle::exampleInstance()), "example"), oracle::exampleInstance());
}

TEST(Vfr, Errors)
{
    EXPECT_EQ(parseKind([] { parseVFR("2 2\n0 1 1 2\n0 1\n", "v"); }), ParseErrorKind::BadPairCount);
    EXPECT_EQ(parseKind([] { parseVFR("2 2\n0 1 1 2\n0 1 2 2\n", "v"); }), ParseErrorKind::MachineIndexOutOfRange);
    EXPECT_EQ(parseKind([] { parseVFR("2 2\n0 1 1 2\n", "v"); }), ParseErrorKind::ShortMatrix);
    EXPECT_EQ(parseKind([] { parseVFR("2 2\n0 1 1 q\n0 1 1 2\n", "v"); }), ParseErrorKind::NonIntegerToken);
    EXPECT_EQ(parseKind([] { parseVFR("2\n", "v"); }), ParseErrorKind::MalformedHeader);
}

TEST(Format, Detection)
{
    EXPECT_EQ(detectFormat(taillardBlock(1, 1, "5\n")), InstanceFormat::Taillard);
    EXPECT_EQ(parseKind([] { detectFormat("1 2 3\n"); }), ParseErrorKind::UnknownFormat);
    EXPECT_EQ(parseInstanceFormat("vfr"), InstanceFormat::Vfr);
    EXPECT_FALSE(parseInstanceFormat("csv"));
}

TEST(Naming, StemsAndSets)
{
    EXPECT_EQ(instanceStem("/x/VFR100_20_1_Gap.txt"), "VFR100_20_1");
    EXPECT_EQ(instanceStem("tai20_5.txt"), "tai20_5");
    EXPECT_EQ(setNameOf("tai20_5_3"), "tai20_5");
    EXPECT_EQ(setNameOf("VFR100_20_1"), "VFR100_20");
    EXPECT_TRUE(naturalLess("tai20_5_2", "tai20_5_10"));
    EXPECT_FALSE(naturalLess("tai20_5_10", "tai20_5_2"));
}

TEST(Budgets, PerInstance)
{
    EXPECT_EQ(timeBudgetMillis(100, 20, Objective::Makespan), 90000);
    EXPECT_EQ(timeBudgetMillis(500, 20, Objective::Flowtime), 3600000);
    EXPECT_EQ(timeBudgetMillis(1, 1, Objective::Makespan), 45);
    EXPECT_EQ(timeBudgetMillis(20, 5, Objective::Flowtime), 36000);
}

TEST(Registry, CsvRoundTripAndShippedData)
{
    const auto reg = BestKnownRegistry::parseCsv("name,objective,value\n# comment\na_1,makespan,10\na_1,flowtime,30\n");
    EXPECT_EQ(reg.size(), 2u);
    EXPECT_EQ(reg.find("a_1", Objective::Flowtime), 30);
    EXPECT_FALSE(reg.find("a_2", Objective::Flowtime));
    const auto again = BestKnownRegistry::parseCsv(reg.toCsv());
    EXPECT_EQ(again.toCsv(), reg.toCsv());
    EXPECT_EQ(parseKind([] { BestKnownRegistry::parseCsv("a,b\n"); }), ParseErrorKind::MalformedCsv);

    const auto shipped = BestKnownRegistry::load(kData / "best_known.csv");
    EXPECT_EQ(shipped.find("tai20_5_0", Objective::Flowtime), 14033);
    EXPECT_EQ(shipped.find("tai20_5_4", Objective::Flowtime), 13529);
    EXPECT_EQ(shipped.find("VFR100_20_1", Objective::Makespan), 6173);
}

TEST(Arpd, Formula)
{
    BestKnownRegistry reg;
    reg.set("x_0", Objective::Makespan, 100);
    const std::vector<RunRecord> one{record("x_0", Objective::Makespan, 103)};
    const std::vector<std::string> names{"x_0"};
    EXPECT_DOUBLE_EQ(arpd(one, reg, names, Objective::Makespan), 3.0);

    BestKnownRegistry ten;
    std::vector<RunRecord> equal;
    std::vector<std::string> tenNames;
    for (int k = 0; k < 10; ++k) {
        const std::string name = "s_" + std::to_string(k);
        ten.set(name, Objective::Flowtime, 1000);
        equal.push_back(record(name, Objective::Flowtime, 1000));
        tenNames.push_back(name);
    }
    EXPECT_DOUBLE_EQ(arpd(equal, ten, tenNames, Objective::Flowtime), 0.0);
    equal[3].bestValue = 990;
    EXPECT_NEAR(arpd(equal, ten, tenNames, Objective::Flowtime), -0.1, 1e-12);
}

TEST(Arpd, MissingData)
{
    BestKnownRegistry reg;
    reg.set("x_0", Objective::Makespan, 100);
    const std::vector<std::string> names{"x_0", "x_1"};
    const std::vector<RunRecord> recs{record("x_0", Objective::Makespan, 100), record("x_1", Objective::Makespan, 5)};
    EXPECT_THROW(arpd(recs, reg, names, Objective::Makespan), MissingBestKnown);
    const std::vector<RunRecord> partial{record("x_0", Objective::Makespan, 100)};
    reg.set("x_1", Objective::Makespan, 5);
    EXPECT_THROW(arpd(partial, reg, names, Objective::Makespan), MissingRecord);
    const std::vector<RunRecord> unsolved{record("x_0", Objective::Makespan, 100),
                                          record("x_1", Objective::Makespan, std::nullopt)};
    EXPECT_THROW(arpd(unsolved, reg, names, Objective::Makespan), MissingRecord);
}

TEST(Report, CsvLayoutAndRoundTrip)
{
    BestKnownRegistry reg;
    reg.set("a_10", Objective::Makespan, 100);
    auto r1 = record("a_10", Objective::Makespan, 101);
    r1.jobs = 5;
    r1.machines = 2;
    r1.expansions = 42;
    auto r2 = record("a_2", Objective::Makespan, std::nullopt);
    const std::vector<RunRecord> recs{r1, r2};
    const std::string csv = emitReport(recs, reg, ReportFormat::Csv);
    const std::string expected = std::string(kReportHeader) + "\n"
                                 + "a_2,0,0,makespan,forward,g1,inf,,,0,0,false\n"
                                 + "a_10,5,2,makespan,forward,g1,101,100,1.00,0,42,false\n";
    EXPECT_EQ(csv, expected);
    const auto back = parseReportCsv(csv);
    ASSERT_EQ(back.size(), 2u);
    EXPECT_EQ(back[0], r2);
    EXPECT_EQ(back[1], r1);
    EXPECT_EQ(relativeDeviation(r1, reg), 1.0);
    EXPECT_FALSE(relativeDeviation(r2, reg));
}

TEST(Files, MissingFileIsAnError)
{
    EXPECT_THROW(loadInstances(kData / "does_not_exist.txt"), Error);
}
