#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "relqi/errors.hpp"
#include "relqi/harness.hpp"
#include "relqi/partition.hpp"
#include "relqi/report.hpp"
#include "relqi/state_io.hpp"

namespace relqi {
namespace {

using nlohmann::json;
using std::numbers::pi;

TEST(Partition, ParseAndPrint) {
    EXPECT_EQ(PartitionSpec::parse("p1.spin").to_string(), "p1.spin");
    EXPECT_EQ(PartitionSpec::parse("p2.mom").to_string(), "p2.mom");
    EXPECT_EQ(PartitionSpec::parse("particle1").to_string(), "particle1");
    EXPECT_EQ(PartitionSpec::parse("p1.mom,p1.spin").to_string(), "particle1");
    EXPECT_EQ(PartitionSpec::parse("p2.spin,p1.mom").to_string(), "p1.mom,p2.spin");
    EXPECT_EQ(PartitionSpec::parse("p1.spin,p1.spin").to_string(), "p1.spin");
    EXPECT_EQ(PartitionSpec::parse("particle2,p1.spin").to_string(), "p1.spin,particle2");
    EXPECT_EQ(PartitionSpec::parse("p1.spin"), PartitionSpec::spin(0));
    EXPECT_EQ(PartitionSpec::parse("particle3"), PartitionSpec::particle(2));
}

TEST(Partition, RejectsMalformed) {
    for (const char* bad : {"", "p0.spin", "p1.color", "q1.spin", "p1", "p1.spin,", ",p1.spin", "particle",
                            "particle0", "p-1.mom", "p1.spin p2.spin", "pX.mom"}) {
        EXPECT_THROW(PartitionSpec::parse(bad), InvalidArgument) << bad;
    }
}

TEST(Partition, ParsePrintParseIsIdentity) {
    for (std::size_t n = 1; n <= 3; ++n) {
        for (const auto& p : all_partitions(n)) {
            const auto text = p.to_string();
            EXPECT_EQ(PartitionSpec::parse(text), p) << text;
            EXPECT_EQ(PartitionSpec::parse(text).to_string(), text);
        }
    }
}

TEST(Partition, Complement) {
    EXPECT_EQ(PartitionSpec::spin(0).complement(2).to_string(), "p1.mom,particle2");
    EXPECT_EQ(PartitionSpec::particle(1).complement(2), PartitionSpec::particle(0));
}

TEST(Report, FormatNumberRoundTrips) {
    for (double v : {0.1, 1.0 / 3.0, 0.091790527023298596, 1e-300, 0.0}) {
        EXPECT_EQ(std::stod(format_number(v)), v);
    }
}

TEST(Report, SweepCsvRoundTrip) {
    Rng rng(21);
    const StateVector s = random_state(rng, 2, 2);
    const auto parts = all_partitions(2);
    const std::vector<double> grid{0.0, 0.3, 1.0 / 3.0, 2.5};
    const SweepTable t = entropy_sweep(s, Eigen::Vector3d(0.0, 0.6, 0.8), grid, parts);
    std::stringstream buf;
    write_csv(buf, t);
    const SweepTable back = read_sweep_csv(buf);
    ASSERT_EQ(back.partitions, t.partitions);
    ASSERT_EQ(back.rows.size(), t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        EXPECT_EQ(back.rows[i].rapidity, t.rows[i].rapidity);
        EXPECT_EQ(back.rows[i].sum, t.rows[i].sum);
        EXPECT_EQ(back.rows[i].entropies, t.rows[i].entropies);
    }
}

TEST(Report, SweepCsvRejectsBadInput) {
    std::stringstream no_header;
    EXPECT_THROW(read_sweep_csv(no_header), InvalidArgument);
    std::stringstream bad_header("time,p1.spin,sum\n");
    EXPECT_THROW(read_sweep_csv(bad_header), InvalidArgument);
    std::stringstream bad_number("rapidity,p1.spin,sum\n0,abc,0\n");
    EXPECT_THROW(read_sweep_csv(bad_number), InvalidArgument);
    std::stringstream short_row("rapidity,p1.spin,sum\n0,0.5\n");
    EXPECT_THROW(read_sweep_csv(short_row), InvalidArgument);
}

TEST(Report, JsonShapes) {
    const MomentumLabel plus(1.0, 0, 0, 1), minus(1.0, 0, 0, -1);
    const StateVector s = friis_state(pi / 4, pi / 4, plus, minus);
    const std::vector<PartitionSpec> parts{PartitionSpec::parse("p1.mom,p2.spin")};
    const json e = to_json(partition_entropy_sum(from_state(s), parts));
    EXPECT_EQ(e["partitions"][0]["partition"], "p1.mom,p2.spin");
    EXPECT_NEAR(e["sum"].get<double>(), 0.75, 1e-12);

    ScanOptions opts;
    opts.samples = 10;
    const json sc = to_json(invariance_scan(s, parts, opts));
    EXPECT_EQ(sc["scans"][0]["samples"], 10);
    EXPECT_EQ(sc["scans"][0]["verdict"], "invariant");

    std::stringstream csv;
    write_csv(csv, partition_entropy_sum(from_state(s), parts));
    EXPECT_NE(csv.str().find("\"p1.mom,p2.spin\","), std::string::npos);
}

TEST(StateIo, TermsDocument) {
    const json doc = json::parse(R"({
        "particles": 2,
        "momenta": [{"mass": 1, "p": [0, 0, 1]}, {"mass": 1, "p": [0, 0, -1]}],
        "terms": [
            {"amplitude": [1, 0], "config": [[0, "up"], [1, "down"]]},
            {"amplitude": [0, 1], "config": [[1, "up"], [0, "down"]]}
        ]})");
    const StateVector s = state_from_json(doc);
    EXPECT_EQ(s.size(), 2u);
    EXPECT_NEAR(s.norm(), 1.0, 1e-15);
    EXPECT_NEAR(state_entropy(s, PartitionSpec::momentum(0)), 0.5, 1e-12);
    EXPECT_NEAR(state_entropy(s, PartitionSpec::spin(0)), 0.0, 1e-12);
}

TEST(StateIo, ComparisonStateShorthand) {
    const json doc = json::parse(R"({"friis": {"alpha": 0.7853981633974483, "beta": 0.7853981633974483,
        "p_plus": {"mass": 1, "p": [0, 0, 1]}, "p_minus": {"mass": 1, "p": [0, 0, -1]}}})");
    const StateVector s = state_from_json(doc);
    EXPECT_EQ(s.size(), 4u);
    EXPECT_NEAR(state_entropy(s, PartitionSpec::particle(0)), 0.75, 1e-12);
}

TEST(StateIo, RoundTrip) {
    Rng rng(31);
    for (int i = 0; i < 50; ++i) {
        const StateVector s = random_state(rng, 1 + static_cast<std::size_t>(i % 3), 2);
        const StateVector back = state_from_json(json::parse(state_to_json(s).dump()));
        EXPECT_LE(amplitude_distance(back, s), 1e-15);
    }
}

TEST(StateIo, Rejects) {
    for (const char* bad : {
             R"([])",
             R"({"particles": 0, "momenta": [{"mass": 1, "p": [0,0,0]}], "terms": [{"amplitude": [1,0], "config": []}]})",
             R"({"particles": 1, "momenta": [], "terms": []})",
             R"({"particles": 1, "momenta": [{"mass": 1, "p": [0,0]}], "terms": [{"amplitude": [1,0], "config": [[0,"up"]]}]})",
             R"({"particles": 1, "momenta": [{"mass": -1, "p": [0,0,0]}], "terms": [{"amplitude": [1,0], "config": [[0,"up"]]}]})",
             R"({"particles": 1, "momenta": [{"mass": 1, "p": [0,0,0]}], "terms": [{"amplitude": [1,0], "config": [[1,"up"]]}]})",
             R"({"particles": 1, "momenta": [{"mass": 1, "p": [0,0,0]}], "terms": [{"amplitude": [1,0], "config": [[0,"sideways"]]}]})",
             R"({"particles": 1, "momenta": [{"mass": 1, "p": [0,0,0]}], "terms": [{"amplitude": [0,0], "config": [[0,"up"]]}]})",
             R"({"particles": 2, "momenta": [{"mass": 1, "p": [0,0,0]}], "terms": [{"amplitude": [1,0], "config": [[0,"up"]]}]})",
             R"({"friis": {"alpha": 0.1, "beta": 0.2, "p_plus": {"mass": 1, "p": [0,0,1]}, "p_minus": {"mass": 1, "p": [0,0,1]}}})",
         }) {
        EXPECT_THROW(state_from_json(json::parse(bad)), InvalidArgument) << bad;
    }
    EXPECT_THROW(load_state_file("/nonexistent/state.json"), InvalidArgument);
}

}  // namespace
}  // namespace relqi
