#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "edgepart/errors.hpp"

namespace edgepart {

/**
 * @brief Dimensions of a layer input/output tensor.
 *
 * Tensors are height x width x channels; partitioning only ever slices the
 * height axis, width and channels contribute to element counts.
 */
struct TensorShape {
    int height = 0;
    int width = 0;
    int channels = 0;

    long long element_count() const {
        return static_cast<long long>(height) * width * channels;
    }

    bool operator==(const TensorShape&) const = default;
};

enum class LayerKind {
    input,
    convolution,
    pooling,
    activation,
    fully_connected,
    softmax,
};

/// Layers that carry weights; their neuron count equals the output channel count.
inline bool is_weighted(LayerKind kind) {
    return kind == LayerKind::convolution || kind == LayerKind::fully_connected;
}

inline const char* to_string(LayerKind kind) {
    switch (kind) {
    case LayerKind::input: return "input";
    case LayerKind::convolution: return "convolution";
    case LayerKind::pooling: return "pooling";
    case LayerKind::activation: return "activation";
    case LayerKind::fully_connected: return "fully_connected";
    case LayerKind::softmax: return "softmax";
    }
    return "?";
}

inline LayerKind layer_kind_from_string(const std::string& name) {
    if (name == "input") return LayerKind::input;
    if (name == "convolution") return LayerKind::convolution;
    if (name == "pooling") return LayerKind::pooling;
    if (name == "activation") return LayerKind::activation;
    if (name == "fully_connected") return LayerKind::fully_connected;
    if (name == "softmax") return LayerKind::softmax;
    throw validation_error("unknown layer kind '" + name + "'");
}

/**
 * @brief One layer of the chain: operator kind, sliding-window geometry and
 * inferred tensor shapes.
 *
 * `neurons` is nonzero only for weighted kinds (convolution, fully_connected)
 * and then equals the output channel count.
 */
struct LayerSpec {
    int id = 0; ///< 1-based position in the chain
    LayerKind kind = LayerKind::convolution;
    int window_h = 1;
    int window_w = 1;
    int stride = 1;
    int padding = 0;
    int neurons = 0;
    TensorShape in_shape{};
    TensorShape out_shape{};

    /// Window height actually swept over the input. Fully connected layers
    /// consume the whole input tensor regardless of the declared window.
    int effective_window_h() const {
        return kind == LayerKind::fully_connected ? in_shape.height : window_h;
    }

    int effective_window_w() const {
        return kind == LayerKind::fully_connected ? in_shape.width : window_w;
    }

    int effective_stride() const {
        return kind == LayerKind::fully_connected ? 1 : stride;
    }
};

/**
 * @brief An ordered layer chain with all tensor shapes resolved.
 *
 * Immutable after construction; all operations on it are pure functions, so a
 * model can be shared freely between concurrent planner workers.
 */
struct NetworkModel {
    std::string name;
    TensorShape input_shape{};
    std::vector<LayerSpec> layers;

    int layer_count() const { return static_cast<int>(layers.size()); }

    /// Access by 1-based layer id.
    const LayerSpec& layer(int id) const { return layers.at(static_cast<std::size_t>(id) - 1); }

    const LayerSpec& first_layer() const { return layers.front(); }
    const LayerSpec& last_layer() const { return layers.back(); }
};

/// Output extent of one sliding-window pass: floor((in + 2*pad - window) / stride) + 1.
inline int infer_output_extent(int input, int window, int stride, int padding, int layer_id) {
    const int padded = input + 2 * padding;
    if (window > padded) {
        throw validation_error("layer " + std::to_string(layer_id) + ": window " +
                               std::to_string(window) + " exceeds padded input extent " +
                               std::to_string(padded));
    }
    return (padded - window) / stride + 1;
}

inline TensorShape infer_output_shape(const LayerSpec& layer, const TensorShape& input) {
    switch (layer.kind) {
    case LayerKind::input:
        return input;
    case LayerKind::fully_connected:
        return TensorShape{1, 1, layer.neurons};
    case LayerKind::convolution:
    case LayerKind::pooling:
    case LayerKind::activation:
    case LayerKind::softmax: {
        TensorShape out;
        out.height = infer_output_extent(input.height, layer.window_h, layer.stride, layer.padding, layer.id);
        out.width = infer_output_extent(input.width, layer.window_w, layer.stride, layer.padding, layer.id);
        out.channels = layer.kind == LayerKind::convolution ? layer.neurons : input.channels;
        return out;
    }
    }
    throw validation_error("layer " + std::to_string(layer.id) + ": unhandled kind");
}

/// Checks the per-layer field invariants that do not depend on shapes.
inline void validate_layer_fields(const LayerSpec& layer) {
    const std::string where = "layer " + std::to_string(layer.id) + ": ";
    if (layer.window_h < 1 || layer.window_w < 1) {
        throw validation_error(where + "window dimensions must be >= 1");
    }
    if (layer.stride < 1) {
        throw validation_error(where + "stride must be >= 1");
    }
    if (layer.padding < 0) {
        throw validation_error(where + "padding must be >= 0");
    }
    if (is_weighted(layer.kind)) {
        if (layer.neurons < 1) {
            throw validation_error(where + "weighted layer needs a positive neuron count");
        }
    } else if (layer.neurons != 0) {
        throw validation_error(where + "weightless layer must declare 0 neurons");
    }
}

/**
 * @brief Re-derives every in/out shape from the model input shape.
 *
 * Deterministic and idempotent: running it on an already inferred model
 * reproduces the same shapes. Throws validation_error when a window does not
 * fit its padded input.
 */
inline NetworkModel infer_shapes(NetworkModel model) {
    if (model.input_shape.height < 1 || model.input_shape.width < 1 || model.input_shape.channels < 1) {
        throw validation_error("model input shape dimensions must be >= 1");
    }
    TensorShape current = model.input_shape;
    for (LayerSpec& layer : model.layers) {
        layer.in_shape = current;
        layer.out_shape = infer_output_shape(layer, current);
        current = layer.out_shape;
    }
    return model;
}

/// Full structural check: ids consecutive from 1, field invariants, chain consistency.
inline void validate_model(const NetworkModel& model) {
    if (model.layers.empty()) {
        throw validation_error("model has no layers");
    }
    for (int i = 0; i < model.layer_count(); ++i) {
        const LayerSpec& layer = model.layers[static_cast<std::size_t>(i)];
        if (layer.id != i + 1) {
            throw validation_error("layer ids must be consecutive from 1; found id " +
                                   std::to_string(layer.id) + " at position " + std::to_string(i + 1));
        }
        validate_layer_fields(layer);
        if (is_weighted(layer.kind) && layer.neurons != layer.out_shape.channels) {
            throw validation_error("layer " + std::to_string(layer.id) +
                                   ": neuron count must equal output channels");
        }
    }
    if (model.layers.front().in_shape != model.input_shape) {
        throw validation_error("first layer input shape does not match the model input");
    }
    for (int i = 0; i + 1 < model.layer_count(); ++i) {
        if (model.layers[static_cast<std::size_t>(i)].out_shape !=
            model.layers[static_cast<std::size_t>(i) + 1].in_shape) {
            throw validation_error("chain mismatch between layer " + std::to_string(i + 1) +
                                   " and layer " + std::to_string(i + 2));
        }
    }
}

/**
 * @brief Builds a validated model from bare layer descriptions.
 *
 * Ids may all be zero, in which case consecutive ids are assigned in order.
 * Shapes are inferred and the full invariant set is checked.
 */
inline NetworkModel make_network(std::string name, TensorShape input_shape,
                                 std::vector<LayerSpec> layers) {
    NetworkModel model;
    model.name = std::move(name);
    model.input_shape = input_shape;
    model.layers = std::move(layers);
    bool all_zero = true;
    for (const LayerSpec& layer : model.layers) {
        all_zero = all_zero && layer.id == 0;
    }
    if (all_zero) {
        for (int i = 0; i < model.layer_count(); ++i) {
            model.layers[static_cast<std::size_t>(i)].id = i + 1;
        }
    }
    model = infer_shapes(std::move(model));
    validate_model(model);
    return model;
}

} // namespace edgepart
