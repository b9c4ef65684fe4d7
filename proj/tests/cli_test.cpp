#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "test_support.hpp"

using testsupport::fixture_path;
using testsupport::run_cli;

namespace {

struct TempFile {
    std::string path;

    explicit TempFile(const std::string& name) {
        path = std::string(::testing::TempDir()) + name;
    }

    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST(CliTest, PlanThenEstimateDataStrategy) {
    TempFile plan("cli_data.plan");
    const auto planned = run_cli("plan --model " + fixture_path("vgg16.model") +
                                 " --strategy data --partitions 4 --output " + plan.path);
    ASSERT_EQ(planned.exit_code, 0) << planned.output;

    // the written plan carries the published layer-19 split
    const edgepart::PlanDocument document =
        edgepart::parse_plan(testsupport::read_file(plan.path));
    const auto& heights = std::get<edgepart::DataPlan>(document.plan).heights[18];
    std::multiset<int> layer19(heights.begin(), heights.end());
    EXPECT_EQ(layer19, (std::multiset<int>{1, 2, 2, 2}));

    const auto estimated =
        run_cli("estimate --model " + fixture_path("vgg16.model") + " --profile " +
                fixture_path("vgg16.profile") + " --plan " + plan.path);
    EXPECT_EQ(estimated.exit_code, 0) << estimated.output;
    EXPECT_NE(estimated.output.find("data,4,max,"), std::string::npos);
}

TEST(CliTest, SinglePartitionSequentialPlan) {
    const auto result = run_cli("plan --model " + fixture_path("fc_heavy.model") +
                                " --profile " + fixture_path("fc_heavy.profile") +
                                " --strategy sequential --partitions 1");
    ASSERT_EQ(result.exit_code, 0) << result.output;
    EXPECT_NE(result.output.find("group 1 8"), std::string::npos);
}

TEST(CliTest, GaPlanIsReproducibleAndRecordsSeed) {
    const std::string args = "plan --model " + fixture_path("comm_heavy.model") + " --profile " +
                             fixture_path("comm_heavy.profile") +
                             " --strategy vertical --partitions 3 --seed 42 --generations 60";
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    ASSERT_EQ(first.exit_code, 0) << first.output;
    EXPECT_EQ(first.output, second.output);
    EXPECT_NE(first.output.find("seed=42"), std::string::npos);
}

TEST(CliTest, EstimateMatchesForContiguousVerticalAndSequential) {
    TempFile sequential("cli_seq.plan");
    TempFile vertical("cli_vert.plan");
    {
        std::ofstream out(sequential.path);
        out << "plan strategy=sequential partitions=2\ngroup 1 4\ngroup 5 8\n";
    }
    {
        std::ofstream out(vertical.path);
        out << "plan strategy=vertical partitions=2\nassign 1 1 1 1 2 2 2 2\n";
    }
    const std::string base = "estimate --model " + fixture_path("fc_heavy.model") +
                             " --profile " + fixture_path("fc_heavy.profile") + " --plan ";
    const auto seq = run_cli(base + sequential.path);
    const auto vert = run_cli(base + vertical.path);
    ASSERT_EQ(seq.exit_code, 0) << seq.output;
    ASSERT_EQ(vert.exit_code, 0) << vert.output;
    // identical numeric columns; only the strategy column differs
    std::string seq_numbers = seq.output;
    std::string vert_numbers = vert.output;
    auto strip = [](std::string text, const std::string& needle) {
        std::size_t at;
        while ((at = text.find(needle)) != std::string::npos) {
            text.erase(at, needle.size());
        }
        return text;
    };
    EXPECT_EQ(strip(seq_numbers, "sequential"), strip(vert_numbers, "vertical"));
}

TEST(CliTest, EstimateRejectsMismatchedPlan) {
    TempFile plan("cli_bad.plan");
    {
        std::ofstream out(plan.path);
        out << "plan strategy=data partitions=2\nheights 1 100 124\n"; // too few layers
    }
    const auto result = run_cli("estimate --model " + fixture_path("vgg16.model") + " --profile " +
                                fixture_path("vgg16.profile") + " --plan " + plan.path);
    EXPECT_EQ(result.exit_code, 1);
    EXPECT_NE(result.output.find("error"), std::string::npos);
}

TEST(CliTest, ValidateFixturesAgree) {
    for (const char* name : {"vgg16.model", "emotion_fer.model", "compute_heavy.model",
                             "comm_heavy.model", "fc_heavy.model"}) {
        const auto result = run_cli("validate --model " + fixture_path(name));
        EXPECT_EQ(result.exit_code, 0) << name << "\n" << result.output;
        EXPECT_NE(result.output.find("agree"), std::string::npos) << name;
    }
}

TEST(CliTest, ValidateRejectsCorruptedPlanBeforeSimulation) {
    TempFile plan("cli_corrupt.plan");
    {
        std::ofstream out(plan.path);
        const edgepart::NetworkModel model = testsupport::load_model("fc_heavy.model");
        edgepart::PlanDocument document;
        document.strategy = edgepart::Strategy::data;
        edgepart::DataPlan data = edgepart::plan_data(model, 2);
        data.heights[2][0] += 3; // break conservation
        document.plan = data;
        out << edgepart::serialize_plan(document);
    }
    const auto result =
        run_cli("validate --model " + fixture_path("fc_heavy.model") + " --plan " + plan.path);
    EXPECT_EQ(result.exit_code, 1);
    EXPECT_NE(result.output.find("sum"), std::string::npos);
}

TEST(CliTest, LifetimeReproducesPublishedFigures) {
    const auto result = run_cli("lifetime 18000 19 0.0175 0.00565");
    ASSERT_EQ(result.exit_code, 0);
    EXPECT_NE(result.output.find("4.6"), std::string::npos);
    EXPECT_NE(result.output.find("70354285"), std::string::npos);
    EXPECT_NE(result.output.find("\"images\":"), std::string::npos);
}

TEST(CliTest, LifetimeRejectsNonPositiveInput) {
    const auto result = run_cli("lifetime 18000 19 0 0.00565");
    EXPECT_EQ(result.exit_code, 1);
}

TEST(CliTest, UsageErrorsExitWithTwo) {
    EXPECT_EQ(run_cli("plan --model /nonexistent --strategy warp --partitions 2").exit_code, 2);
    EXPECT_EQ(run_cli("estimate").exit_code, 2);
    EXPECT_EQ(run_cli("no-such-command").exit_code, 2);
}

TEST(CliTest, MissingFilesExitWithOne) {
    const auto result =
        run_cli("plan --model /nonexistent.model --strategy data --partitions 2");
    EXPECT_EQ(result.exit_code, 1);
    EXPECT_NE(result.output.find("cannot read"), std::string::npos);
}

TEST(CliTest, SweepJsonFormat) {
    const auto result = run_cli("sweep --model " + fixture_path("fc_heavy.model") + " --profile " +
                                fixture_path("fc_heavy.profile") +
                                " --max-devices 2 --generations 30 --format json");
    ASSERT_EQ(result.exit_code, 0) << result.output;
    EXPECT_NE(result.output.find("\"rows\""), std::string::npos);
    EXPECT_NE(result.output.find("\"normalized_max\""), std::string::npos);
}
