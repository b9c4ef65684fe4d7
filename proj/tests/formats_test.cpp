#include <gtest/gtest.h>

#include <algorithm>

#include "test_support.hpp"

using namespace edgepart;

TEST(ModelFormatTest, ParseSerializeRoundTrip) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    const NetworkModel again = parse_model(serialize_model(model));
    ASSERT_EQ(again.layer_count(), model.layer_count());
    EXPECT_EQ(again.name, model.name);
    EXPECT_EQ(again.input_shape, model.input_shape);
    for (int i = 0; i < model.layer_count(); ++i) {
        const LayerSpec& a = model.layers[size_t(i)];
        const LayerSpec& b = again.layers[size_t(i)];
        EXPECT_EQ(a.id, b.id);
        EXPECT_EQ(a.kind, b.kind);
        EXPECT_EQ(a.window_h, b.window_h);
        EXPECT_EQ(a.window_w, b.window_w);
        EXPECT_EQ(a.stride, b.stride);
        EXPECT_EQ(a.padding, b.padding);
        EXPECT_EQ(a.neurons, b.neurons);
        EXPECT_EQ(a.out_shape, b.out_shape);
    }
}

TEST(ModelFormatTest, JsonDocumentAccepted) {
    const NetworkModel model = testsupport::load_model("emotion_fer.model");
    const NetworkModel from_json = parse_model(model_to_json(model).dump());
    EXPECT_EQ(from_json.layer_count(), model.layer_count());
    for (int i = 0; i < model.layer_count(); ++i) {
        EXPECT_EQ(from_json.layers[size_t(i)].out_shape, model.layers[size_t(i)].out_shape);
    }
}

TEST(ModelFormatTest, MalformedLineNamesLineNumber) {
    const std::string text =
        "network name=t input_height=8 input_width=8 input_channels=1\n"
        "layer id=1 kind=activation window_h=1 window_w=1 stride=1 padding=0 neurons=0\n"
        "layer id=2 kind=activation window_h=oops window_w=1 stride=1 padding=0 neurons=0\n";
    try {
        parse_model(text);
        FAIL() << "expected parse_error";
    } catch (const parse_error& e) {
        EXPECT_EQ(e.line, 3);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}

TEST(ModelFormatTest, UnknownRecordRejected) {
    EXPECT_THROW(parse_model("bogus a=1\n"), parse_error);
    EXPECT_THROW(parse_model("{\"name\": 3}"), parse_error);
    EXPECT_THROW(parse_model("{invalid json"), parse_error);
}

TEST(ModelFormatTest, CommentsAndBlankLinesIgnored) {
    const std::string text =
        "# a model\n"
        "\n"
        "network name=t input_height=8 input_width=8 input_channels=1\n"
        "layer id=1 kind=activation window_h=1 window_w=1 stride=1 padding=0 neurons=0  # inline\n";
    EXPECT_EQ(parse_model(text).layer_count(), 1);
}

TEST(ProfileFormatTest, JsonDocumentAccepted) {
    const NetworkModel model = testsupport::load_model("compute_heavy.model");
    const DeviceProfile profile = testsupport::load_profile("compute_heavy.profile", model);
    const DeviceProfile from_json = profile_from_json(profile_to_json(profile), model);
    for (const auto& [id, entry] : profile.layer_profiles) {
        EXPECT_DOUBLE_EQ(from_json.layer(id).comp_energy, entry.comp_energy);
    }
}

TEST(PlanFormatTest, DataPlanRoundTrip) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    PlanDocument document;
    document.strategy = Strategy::data;
    document.plan = plan_data(model, 3);
    const PlanDocument again = parse_plan(serialize_plan(document));
    EXPECT_EQ(again.strategy, Strategy::data);
    EXPECT_EQ(std::get<DataPlan>(again.plan).heights, std::get<DataPlan>(document.plan).heights);
    EXPECT_FALSE(again.seed.has_value());
}

TEST(PlanFormatTest, HorizontalPlanRoundTrip) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    PlanDocument document;
    document.strategy = Strategy::horizontal;
    document.plan = plan_horizontal(model, 4);
    const PlanDocument again = parse_plan(serialize_plan(document));
    const auto& a = std::get<HorizontalPlan>(document.plan);
    const auto& b = std::get<HorizontalPlan>(again.plan);
    EXPECT_EQ(a.neuron_counts, b.neuron_counts);
    EXPECT_EQ(a.channel_counts, b.channel_counts);
}

TEST(PlanFormatTest, SequentialPlanRecordsSeed) {
    PlanDocument document;
    document.strategy = Strategy::sequential;
    document.seed = 42;
    document.plan = SequentialPlan{2, {{1, 4}, {5, 9}}};
    const std::string text = serialize_plan(document);
    EXPECT_NE(text.find("seed=42"), std::string::npos);
    const PlanDocument again = parse_plan(text);
    ASSERT_TRUE(again.seed.has_value());
    EXPECT_EQ(*again.seed, 42u);
    EXPECT_EQ(std::get<SequentialPlan>(again.plan).groups,
              (std::vector<std::pair<int, int>>{{1, 4}, {5, 9}}));
}

TEST(PlanFormatTest, VerticalPlanUsesOneBasedLabelsOnDisk) {
    PlanDocument document;
    document.strategy = Strategy::vertical;
    document.plan = VerticalPlan{2, {0, 1, 0, 1}};
    const std::string text = serialize_plan(document);
    EXPECT_NE(text.find("assign 1 2 1 2"), std::string::npos);
    const PlanDocument again = parse_plan(text);
    EXPECT_EQ(std::get<VerticalPlan>(again.plan).assignment, (std::vector<int>{0, 1, 0, 1}));
}

TEST(PlanFormatTest, JsonPlanAccepted) {
    PlanDocument document;
    document.strategy = Strategy::vertical;
    document.seed = 7;
    document.plan = VerticalPlan{3, {0, 1, 2, 0}};
    const PlanDocument again = parse_plan(plan_to_json(document).dump());
    EXPECT_EQ(again.strategy, Strategy::vertical);
    EXPECT_EQ(std::get<VerticalPlan>(again.plan).assignment, (std::vector<int>{0, 1, 2, 0}));
    EXPECT_EQ(*again.seed, 7u);
}

TEST(PlanFormatTest, WidthMismatchRejected) {
    const std::string text =
        "plan strategy=data partitions=3\n"
        "heights 1 4 4\n"; // only two values for three partitions
    EXPECT_THROW(parse_plan(text), validation_error);
}

TEST(ReportTest, BreakdownCsvShape) {
    const NetworkModel model = testsupport::load_model("compute_heavy.model");
    const DeviceProfile profile = testsupport::load_profile("compute_heavy.profile", model);
    const FleetSummary summary = energy_data(model, profile, plan_data(model, 2));
    const std::string csv = breakdown_csv(Strategy::data, summary);
    EXPECT_EQ(csv.find(kBreakdownCsvHeader), 0u);
    EXPECT_NE(csv.find("data,2,1,"), std::string::npos);
    EXPECT_NE(csv.find("data,2,max,"), std::string::npos);
    // one header, one line per partition, one summary line
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
}

TEST(ReportTest, SweepCsvDeterministic) {
    const NetworkModel model = testsupport::load_model("fc_heavy.model");
    const DeviceProfile profile = testsupport::load_profile("fc_heavy.profile", model);
    SweepOptions options;
    options.max_devices = 3;
    options.ga.seed = 5;
    options.ga.generations = 40;
    const std::string first = sweep_csv(run_sweep(model, profile, options));
    const std::string second = sweep_csv(run_sweep(model, profile, options));
    EXPECT_EQ(first, second);
    EXPECT_EQ(first.find(kSweepCsvHeader), 0u);
    // 4 strategies x 3 device counts + header
    EXPECT_EQ(std::count(first.begin(), first.end(), '\n'), 13);
}

TEST(ReportTest, BreakdownJsonMirrorsCsvFields) {
    const NetworkModel model = testsupport::load_model("compute_heavy.model");
    const DeviceProfile profile = testsupport::load_profile("compute_heavy.profile", model);
    const FleetSummary summary = energy_data(model, profile, plan_data(model, 2));
    const nlohmann::json doc = breakdown_json(Strategy::data, summary);
    EXPECT_EQ(doc.at("strategy"), "data");
    EXPECT_EQ(doc.at("partitions"), 2);
    EXPECT_EQ(doc.at("per_partition").size(), 2u);
    EXPECT_TRUE(doc.at("per_partition")[0].contains("comp_J"));
    EXPECT_TRUE(doc.contains("normalized_max"));
}
