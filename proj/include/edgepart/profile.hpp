#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "edgepart/model.hpp"

namespace edgepart {

/**
 * @brief Affine communication cost: moving n elements costs
 * base_energy + per_element_energy * n. Zero elements still pay the base
 * (a transfer event happens either way).
 */
struct CommCostModel {
    double base_energy = 0.0;        ///< joules per transfer event
    double per_element_energy = 0.0; ///< joules per tensor element
};

inline double comm_energy(const CommCostModel& model, long long elements) {
    return model.base_energy + model.per_element_energy * static_cast<double>(elements);
}

/**
 * @brief Calibration data for one layer on one device.
 *
 * Power traces are pre-integrated: comp_energy is the energy of producing the
 * whole output tensor once. The communication fields are measured (or
 * synthesized) at full tensor size; the evaluators scale them by per-partition
 * fractions.
 */
struct LayerProfile {
    double comp_energy = 0.0;    ///< J to compute the full output tensor
    double comp_time = 0.0;      ///< s to compute the full output tensor
    double in_comm_energy = 0.0; ///< J to move the full output tensor on-device
    double ex_comm_energy = 0.0; ///< J to move the full output tensor across devices
    double send_energy = 0.0;    ///< J to send the full output tensor to another device
    double recv_energy = 0.0;    ///< J to receive the full input tensor from another device
};

/**
 * @brief Per-layer calibration for a (homogeneous) device fleet plus the
 * parametric cost models used to fill fields a profile document omits.
 */
struct DeviceProfile {
    std::string device_name;
    std::map<int, LayerProfile> layer_profiles; ///< keyed by 1-based layer id
    CommCostModel internal_model{};
    CommCostModel external_model{};
    double bytes_per_element = 4.0; ///< documentation only; never enters a computation

    const LayerProfile& layer(int id) const {
        auto it = layer_profiles.find(id);
        if (it == layer_profiles.end()) {
            throw validation_error("profile has no entry for layer " + std::to_string(id));
        }
        return it->second;
    }
};

/// Coverage and non-negativity checks against a target model.
inline void validate_profile(const DeviceProfile& profile, const NetworkModel& model) {
    for (const auto& [id, entry] : profile.layer_profiles) {
        if (id < 1 || id > model.layer_count()) {
            throw validation_error("profile names unknown layer " + std::to_string(id));
        }
        const std::string where = "profile layer " + std::to_string(id) + ": ";
        if (entry.comp_energy < 0 || entry.comp_time < 0 || entry.in_comm_energy < 0 ||
            entry.ex_comm_energy < 0 || entry.send_energy < 0 || entry.recv_energy < 0) {
            throw validation_error(where + "energy and time fields must be >= 0");
        }
        if (model.layer(id).kind != LayerKind::input && entry.comp_time <= 0) {
            throw validation_error(where + "comp_time must be > 0 for non-input layers");
        }
    }
    for (const LayerSpec& layer : model.layers) {
        if (!profile.layer_profiles.contains(layer.id)) {
            throw validation_error("profile is missing layer " + std::to_string(layer.id));
        }
    }
    if (profile.internal_model.base_energy < 0 || profile.internal_model.per_element_energy < 0 ||
        profile.external_model.base_energy < 0 || profile.external_model.per_element_energy < 0) {
        throw validation_error("communication cost model parameters must be >= 0");
    }
}

/**
 * @brief Builds a complete profile from cost parameters instead of hardware
 * measurements.
 *
 * comp_energy is comp_joules_per_element * |Y_i| * window volume, where the
 * window volume is effective window height x width x input channels (for
 * fully connected layers the whole input tensor). Input layers compute
 * nothing. Communication fields come from the affine models at full tensor
 * sizes. comp_time assumes a 1 W nominal draw, floored at 1 ns so the
 * profile stays valid when the compute cost is zero.
 */
inline DeviceProfile synthesize_profile(const NetworkModel& model, double comp_joules_per_element,
                                        CommCostModel internal, CommCostModel external) {
    DeviceProfile profile;
    profile.device_name = model.name + "-synthetic";
    profile.internal_model = internal;
    profile.external_model = external;
    for (const LayerSpec& layer : model.layers) {
        LayerProfile entry;
        if (layer.kind != LayerKind::input) {
            const double window_volume = static_cast<double>(layer.effective_window_h()) *
                                         layer.effective_window_w() * layer.in_shape.channels;
            entry.comp_energy = comp_joules_per_element *
                                static_cast<double>(layer.out_shape.element_count()) * window_volume;
            entry.comp_time = std::max(entry.comp_energy, 1e-9);
        }
        entry.in_comm_energy = comm_energy(internal, layer.out_shape.element_count());
        entry.ex_comm_energy = comm_energy(external, layer.out_shape.element_count());
        entry.send_energy = comm_energy(external, layer.out_shape.element_count());
        entry.recv_energy = comm_energy(external, layer.in_shape.element_count());
        profile.layer_profiles.emplace(layer.id, entry);
    }
    validate_profile(profile, model);
    return profile;
}

} // namespace edgepart
