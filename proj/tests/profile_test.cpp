#include <gtest/gtest.h>

#include <random>

#include "test_support.hpp"

using namespace edgepart;

TEST(ProfileTest, CommEnergyExamples) {
    EXPECT_DOUBLE_EQ(comm_energy(CommCostModel{0.0, 0.0}, 1000000), 0.0);
    EXPECT_NEAR(comm_energy(CommCostModel{0.001, 1e-8}, 1000000), 0.011, 1e-15);
    EXPECT_DOUBLE_EQ(comm_energy(CommCostModel{0.001, 1e-8}, 0), 0.001);
}

TEST(ProfileTest, CommEnergyIsAffine) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> param(0.0, 1e-3);
    std::uniform_int_distribution<long long> count(0, 1 << 20);
    for (int trial = 0; trial < 200; ++trial) {
        const CommCostModel model{param(rng), param(rng)};
        const long long a = count(rng);
        const long long b = count(rng);
        EXPECT_NEAR(comm_energy(model, a + b) - comm_energy(model, a),
                    model.per_element_energy * static_cast<double>(b), 1e-12);
        EXPECT_GE(comm_energy(model, a + b), comm_energy(model, a)); // monotone
    }
}

TEST(ProfileTest, SynthesizeZeroCost) {
    LayerSpec identity;
    identity.kind = LayerKind::activation;
    const NetworkModel model = make_network("t", TensorShape{4, 4, 1}, {identity});
    const DeviceProfile profile = synthesize_profile(model, 0.0, {}, {});
    EXPECT_DOUBLE_EQ(profile.layer(1).comp_energy, 0.0);
    EXPECT_GT(profile.layer(1).comp_time, 0.0);
}

TEST(ProfileTest, SynthesizeUsesExternalModelAtOutputSize) {
    LayerSpec conv;
    conv.kind = LayerKind::convolution;
    conv.window_h = conv.window_w = 3;
    conv.padding = 1;
    conv.neurons = 8;
    LayerSpec pool;
    pool.kind = LayerKind::pooling;
    pool.window_h = pool.window_w = 2;
    pool.stride = 2;
    const NetworkModel model = make_network("t", TensorShape{16, 16, 2}, {conv, pool});
    const CommCostModel external{0.0, 1e-8};
    const DeviceProfile profile = synthesize_profile(model, 1e-9, {}, external);
    EXPECT_DOUBLE_EQ(profile.layer(1).ex_comm_energy,
                     comm_energy(external, model.layer(1).out_shape.element_count()));
    EXPECT_DOUBLE_EQ(profile.layer(2).recv_energy,
                     comm_energy(external, model.layer(2).in_shape.element_count()));
}

TEST(ProfileTest, SynthesizeInputLayerComputesNothing) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    const DeviceProfile profile = synthesize_profile(model, 1e-6, {}, {});
    EXPECT_DOUBLE_EQ(profile.layer(1).comp_energy, 0.0);
    EXPECT_GT(profile.layer(2).comp_energy, 0.0);
}

TEST(ProfileTest, FixtureProfileCoversAllLayers) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    const DeviceProfile profile = testsupport::load_profile("vgg16.profile", model);
    for (int id = 1; id <= 23; ++id) {
        EXPECT_NO_THROW(profile.layer(id));
    }
    EXPECT_EQ(profile.device_name, "jetson-tx2-synthetic");
}

TEST(ProfileTest, ExplicitFieldOverridesCostModel) {
    LayerSpec identity;
    identity.kind = LayerKind::activation;
    const NetworkModel model = make_network("t", TensorShape{4, 4, 1}, {identity});
    const std::string text =
        "profile device_name=d\n"
        "internal base=0 per_element=1e-6\n"
        "external base=0 per_element=1e-6\n"
        "layer id=1 comp_energy=0.5 comp_time=0.1 send_energy=42.0\n";
    const DeviceProfile profile = parse_profile(text, model);
    EXPECT_DOUBLE_EQ(profile.layer(1).send_energy, 42.0);
    // omitted fields come from the cost models at full tensor sizes
    EXPECT_DOUBLE_EQ(profile.layer(1).ex_comm_energy, 16 * 1e-6);
}

TEST(ProfileTest, MissingLayerNamesId) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    std::string text =
        "profile device_name=d\n"
        "internal base=0 per_element=0\n"
        "external base=0 per_element=0\n";
    for (int id = 1; id <= 23; ++id) {
        if (id == 7) {
            continue;
        }
        text += "layer id=" + std::to_string(id) + " comp_energy=1 comp_time=1\n";
    }
    try {
        parse_profile(text, model);
        FAIL() << "expected validation_error";
    } catch (const validation_error& e) {
        EXPECT_NE(std::string(e.what()).find("7"), std::string::npos);
    }
}

TEST(ProfileTest, UnknownLayerRejected) {
    LayerSpec identity;
    identity.kind = LayerKind::activation;
    const NetworkModel model = make_network("t", TensorShape{4, 4, 1}, {identity});
    const std::string text =
        "profile device_name=d\n"
        "internal base=0 per_element=0\n"
        "external base=0 per_element=0\n"
        "layer id=1 comp_energy=1 comp_time=1\n"
        "layer id=2 comp_energy=1 comp_time=1\n";
    EXPECT_THROW(parse_profile(text, model), validation_error);
}

TEST(ProfileTest, NegativeEnergyRejected) {
    LayerSpec identity;
    identity.kind = LayerKind::activation;
    const NetworkModel model = make_network("t", TensorShape{4, 4, 1}, {identity});
    const std::string text =
        "profile device_name=d\n"
        "internal base=0 per_element=0\n"
        "external base=0 per_element=0\n"
        "layer id=1 comp_energy=-1 comp_time=1\n";
    EXPECT_THROW(parse_profile(text, model), validation_error);
}

TEST(ProfileTest, SerializeLoadRoundTripTwelveDigits) {
    const NetworkModel model = testsupport::load_model("emotion_fer.model");
    const DeviceProfile original =
        synthesize_profile(model, 3.14159e-11, CommCostModel{1.23456789e-6, 5.55e-10},
                           CommCostModel{4.2e-4, 2.718281828e-8});
    const DeviceProfile reloaded = parse_profile(serialize_profile(original), model);
    auto same12 = [](double a, double b) {
        return format_number(a) == format_number(b); // 12 significant digits
    };
    for (const auto& [id, entry] : original.layer_profiles) {
        const LayerProfile& other = reloaded.layer(id);
        EXPECT_TRUE(same12(entry.comp_energy, other.comp_energy)) << id;
        EXPECT_TRUE(same12(entry.comp_time, other.comp_time)) << id;
        EXPECT_TRUE(same12(entry.in_comm_energy, other.in_comm_energy)) << id;
        EXPECT_TRUE(same12(entry.ex_comm_energy, other.ex_comm_energy)) << id;
        EXPECT_TRUE(same12(entry.send_energy, other.send_energy)) << id;
        EXPECT_TRUE(same12(entry.recv_energy, other.recv_energy)) << id;
    }
    EXPECT_EQ(original.device_name, reloaded.device_name);
}
