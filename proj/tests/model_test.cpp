#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace edgepart;

namespace {

LayerSpec conv(int window, int stride, int padding, int neurons) {
    LayerSpec layer;
    layer.kind = LayerKind::convolution;
    layer.window_h = layer.window_w = window;
    layer.stride = stride;
    layer.padding = padding;
    layer.neurons = neurons;
    return layer;
}

LayerSpec pool(int window, int stride) {
    LayerSpec layer;
    layer.kind = LayerKind::pooling;
    layer.window_h = layer.window_w = window;
    layer.stride = stride;
    return layer;
}

} // namespace

TEST(ModelTest, SameConvolutionKeepsHeight) {
    const NetworkModel model =
        make_network("t", TensorShape{224, 224, 64}, {conv(3, 1, 1, 64)});
    EXPECT_EQ(model.layers[0].out_shape.height, 224);
    EXPECT_EQ(model.layers[0].out_shape.channels, 64);
}

TEST(ModelTest, PoolingHalvesHeight) {
    const NetworkModel model = make_network("t", TensorShape{224, 224, 64}, {pool(2, 2)});
    EXPECT_EQ(model.layers[0].out_shape.height, 112);
    EXPECT_EQ(model.layers[0].out_shape.channels, 64);
}

TEST(ModelTest, SingleWindowPosition) {
    const NetworkModel model = make_network("t", TensorShape{3, 3, 1}, {conv(3, 1, 0, 5)});
    EXPECT_EQ(model.layers[0].out_shape.height, 1);
    EXPECT_EQ(model.layers[0].out_shape.width, 1);
}

TEST(ModelTest, IdentityLayer) {
    LayerSpec identity;
    identity.kind = LayerKind::activation;
    const NetworkModel model = make_network("t", TensorShape{17, 9, 4}, {identity});
    ASSERT_EQ(model.layer_count(), 1);
    EXPECT_EQ(model.layers[0].out_shape, model.layers[0].in_shape);
}

TEST(ModelTest, FullyConnectedCollapsesToNeurons) {
    LayerSpec fc;
    fc.kind = LayerKind::fully_connected;
    fc.window_h = fc.window_w = 7;
    fc.neurons = 4096;
    const NetworkModel model = make_network("t", TensorShape{7, 7, 512}, {fc});
    EXPECT_EQ(model.layers[0].out_shape, (TensorShape{1, 1, 4096}));
    EXPECT_EQ(model.layers[0].effective_window_h(), 7);
    EXPECT_EQ(model.layers[0].effective_stride(), 1);
}

TEST(ModelTest, SamePaddingIdentityForAllHeights) {
    // stride 1, odd window, pad (window-1)/2 keeps the height, for any height
    for (int window : {1, 3, 5, 7}) {
        for (int height = 1; height <= 512; ++height) {
            LayerSpec layer = conv(window, 1, (window - 1) / 2, 3);
            layer.id = 1;
            EXPECT_EQ(infer_output_extent(height, window, 1, (window - 1) / 2, 1), height)
                << "window " << window << " height " << height;
        }
    }
}

TEST(ModelTest, InferShapesIsIdempotent) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    const NetworkModel again = infer_shapes(model);
    for (int i = 0; i < model.layer_count(); ++i) {
        EXPECT_EQ(model.layers[size_t(i)].out_shape, again.layers[size_t(i)].out_shape);
        EXPECT_EQ(model.layers[size_t(i)].in_shape, again.layers[size_t(i)].in_shape);
    }
}

TEST(ModelTest, ChainConsistencyOnFixtures) {
    for (const char* name : {"vgg16.model", "emotion_fer.model", "compute_heavy.model",
                             "comm_heavy.model", "fc_heavy.model"}) {
        const NetworkModel model = testsupport::load_model(name);
        EXPECT_EQ(model.layers.front().in_shape, model.input_shape) << name;
        for (int i = 0; i + 1 < model.layer_count(); ++i) {
            EXPECT_EQ(model.layers[size_t(i)].out_shape, model.layers[size_t(i) + 1].in_shape)
                << name << " layer " << i + 1;
        }
    }
}

TEST(ModelTest, Vgg16FixtureShape) {
    const NetworkModel model = testsupport::load_model("vgg16.model");
    EXPECT_EQ(model.layer_count(), 23);
    EXPECT_EQ(model.input_shape, (TensorShape{224, 224, 3}));
    // published single-device heights of the whole chain
    const std::vector<int> heights{224, 224, 224, 112, 112, 112, 56, 56, 56, 56, 28, 28,
                                   28,  28,  14,  14,  14,  14,  7,  1,  1,  1,  1};
    for (int i = 0; i < model.layer_count(); ++i) {
        EXPECT_EQ(model.layers[size_t(i)].out_shape.height, heights[size_t(i)]) << "layer " << i + 1;
    }
    EXPECT_EQ(model.layer(20).out_shape.channels, 4096);
    EXPECT_EQ(model.layer(22).out_shape.channels, 1000);
}

TEST(ModelTest, EmotionFerFixtureShape) {
    const NetworkModel model = testsupport::load_model("emotion_fer.model");
    EXPECT_EQ(model.layer_count(), 19);
    EXPECT_EQ(model.input_shape, (TensorShape{64, 64, 1}));
}

TEST(ModelTest, WindowLargerThanPaddedInputFails) {
    EXPECT_THROW(make_network("t", TensorShape{4, 4, 1}, {conv(5, 1, 0, 2)}), validation_error);
}

TEST(ModelTest, WeightedLayerNeuronInvariant) {
    LayerSpec bad = conv(3, 1, 1, 0); // weighted but no neurons
    EXPECT_THROW(make_network("t", TensorShape{8, 8, 1}, {bad}), validation_error);
    LayerSpec bad_pool = pool(2, 2);
    bad_pool.neurons = 4; // weightless with neurons
    EXPECT_THROW(make_network("t", TensorShape{8, 8, 1}, {bad_pool}), validation_error);
}

TEST(ModelTest, NonConsecutiveIdsRejected) {
    LayerSpec a = conv(3, 1, 1, 2);
    a.id = 1;
    LayerSpec b = pool(2, 2);
    b.id = 3;
    NetworkModel model;
    model.name = "t";
    model.input_shape = TensorShape{8, 8, 1};
    model.layers = {a, b};
    model = infer_shapes(std::move(model));
    EXPECT_THROW(validate_model(model), validation_error);
}
