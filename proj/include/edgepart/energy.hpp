#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "edgepart/partition.hpp"
#include "edgepart/profile.hpp"

namespace edgepart {

/**
 * @brief Energy one partition spends per inference, split into computation,
 * on-device communication and cross-device communication.
 *
 * total is always the exact sum of the three components.
 */
struct EnergyBreakdown {
    int partition = 1; ///< 1-based partition index
    double comp = 0.0;
    double in_comm = 0.0;
    double ex_comm = 0.0;
    double total = 0.0;
};

/**
 * @brief Per-partition breakdowns plus the fleet figure of merit: the largest
 * partition energy, normalized to what a single device would spend.
 */
struct FleetSummary {
    std::vector<EnergyBreakdown> per_partition;
    double max_energy = 0.0;
    int max_partition = 1;            ///< 1-based; lowest index on ties
    double normalized_max = 0.0;      ///< max_energy / single_device_total
    double single_device_total = 0.0; ///< baseline the normalization divides by
};

/// Energy of running the whole chain on one device: computation plus
/// on-device communication, no external transfers.
inline double single_device_energy(const NetworkModel& model, const DeviceProfile& profile) {
    double total = 0.0;
    for (const LayerSpec& layer : model.layers) {
        const LayerProfile& entry = profile.layer(layer.id);
        total += entry.comp_energy + entry.in_comm_energy;
    }
    return total;
}

inline EnergyBreakdown make_breakdown(int partition, double comp, double in_comm, double ex_comm) {
    EnergyBreakdown b;
    b.partition = partition;
    b.comp = comp;
    b.in_comm = in_comm;
    b.ex_comm = ex_comm;
    b.total = comp + in_comm + ex_comm;
    return b;
}

/// Folds per-partition breakdowns into a FleetSummary. Ties on the maximum go
/// to the lowest partition index.
inline FleetSummary summarize(std::vector<EnergyBreakdown> per_partition,
                              double single_device_total) {
    if (per_partition.empty()) {
        throw validation_error("summarize: no partitions");
    }
    if (!(single_device_total > 0.0)) {
        throw validation_error("summarize: single-device total must be > 0");
    }
    FleetSummary summary;
    summary.per_partition = std::move(per_partition);
    summary.max_energy = summary.per_partition.front().total;
    summary.max_partition = summary.per_partition.front().partition;
    for (const EnergyBreakdown& b : summary.per_partition) {
        if (b.total > summary.max_energy) {
            summary.max_energy = b.total;
            summary.max_partition = b.partition;
        }
    }
    summary.single_device_total = single_device_total;
    summary.normalized_max = summary.max_energy / single_device_total;
    return summary;
}

/**
 * @brief Data-strategy evaluator.
 *
 * Computation and internal communication scale with each partition's height
 * share of every layer. External communication charges partition j the comm
 * height of each consecutive layer pair, as a fraction of the producing
 * layer's full-tensor transfer energy; the last layer has no consumer and is
 * excluded.
 */
inline FleetSummary energy_data(const NetworkModel& model, const DeviceProfile& profile,
                                const DataPlan& plan) {
    validate_plan(model, plan);
    const int layer_count = model.layer_count();
    std::vector<EnergyBreakdown> result;
    result.reserve(static_cast<std::size_t>(plan.partitions));
    for (int j = 0; j < plan.partitions; ++j) {
        double comp = 0.0;
        double in_comm = 0.0;
        double ex_comm = 0.0;
        for (int i = 0; i < layer_count; ++i) {
            const LayerSpec& layer = model.layers[static_cast<std::size_t>(i)];
            const LayerProfile& entry = profile.layer(layer.id);
            const double share =
                static_cast<double>(plan.heights[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                layer.out_shape.height;
            comp += share * entry.comp_energy;
            in_comm += share * entry.in_comm_energy;
            if (i + 1 < layer_count) {
                const LayerSpec& consumer = model.layers[static_cast<std::size_t>(i) + 1];
                const int halo = comm_height(consumer, plan.heights[static_cast<std::size_t>(i)],
                                             plan.heights[static_cast<std::size_t>(i) + 1], j);
                ex_comm += (static_cast<double>(halo) / layer.out_shape.height) * entry.ex_comm_energy;
            }
        }
        result.push_back(make_breakdown(j + 1, comp, in_comm, ex_comm));
    }
    return summarize(std::move(result), single_device_energy(model, profile));
}

/**
 * @brief Horizontal-strategy evaluator.
 *
 * Workload fractions follow each partition's channel share. Every layer's
 * output except the last must be reassembled by all partitions, so partition j
 * pays the complement of its own share of the full-tensor transfer energy.
 */
inline FleetSummary energy_horizontal(const NetworkModel& model, const DeviceProfile& profile,
                                      const HorizontalPlan& plan) {
    validate_plan(model, plan);
    const int layer_count = model.layer_count();
    std::vector<EnergyBreakdown> result;
    result.reserve(static_cast<std::size_t>(plan.partitions));
    for (int j = 0; j < plan.partitions; ++j) {
        double comp = 0.0;
        double in_comm = 0.0;
        double ex_comm = 0.0;
        for (int i = 0; i < layer_count; ++i) {
            const LayerSpec& layer = model.layers[static_cast<std::size_t>(i)];
            const LayerProfile& entry = profile.layer(layer.id);
            const double share =
                static_cast<double>(plan.channel_counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) /
                layer.out_shape.channels;
            comp += share * entry.comp_energy;
            in_comm += share * entry.in_comm_energy;
            if (i + 1 < layer_count) {
                ex_comm += (1.0 - share) * entry.ex_comm_energy;
            }
        }
        result.push_back(make_breakdown(j + 1, comp, in_comm, ex_comm));
    }
    return summarize(std::move(result), single_device_energy(model, profile));
}

/**
 * @brief Energy of the contiguous layer group [first_id, last_id] when run as
 * one partition of the chain.
 *
 * Computation and internal communication are unscaled sums over the group.
 * The group holding the chain's first layer only sends (receiving the source
 * image is free); the group holding the last layer only receives; middle
 * groups pay both; a group holding both ends transfers nothing.
 *
 * This is the cost function shared by the sequential evaluator and the exact
 * planners, so their optima compare bit-for-bit.
 */
inline EnergyBreakdown sequential_group_energy(const NetworkModel& model,
                                               const DeviceProfile& profile, int first_id,
                                               int last_id, int partition_index) {
    double comp = 0.0;
    double in_comm = 0.0;
    for (int id = first_id; id <= last_id; ++id) {
        const LayerProfile& entry = profile.layer(id);
        comp += entry.comp_energy;
        in_comm += entry.in_comm_energy;
    }
    const bool holds_first = first_id == 1;
    const bool holds_last = last_id == model.layer_count();
    double ex_comm = 0.0;
    if (holds_first && holds_last) {
        ex_comm = 0.0;
    } else if (holds_first) {
        ex_comm = profile.layer(last_id).send_energy;
    } else if (holds_last) {
        ex_comm = profile.layer(first_id).recv_energy;
    } else {
        ex_comm = profile.layer(first_id).recv_energy + profile.layer(last_id).send_energy;
    }
    return make_breakdown(partition_index, comp, in_comm, ex_comm);
}

inline FleetSummary energy_sequential(const NetworkModel& model, const DeviceProfile& profile,
                                      const SequentialPlan& plan) {
    validate_plan(model, plan);
    std::vector<EnergyBreakdown> result;
    result.reserve(plan.groups.size());
    int index = 1;
    for (const auto& [first, last] : plan.groups) {
        result.push_back(sequential_group_energy(model, profile, first, last, index));
        ++index;
    }
    return summarize(std::move(result), single_device_energy(model, profile));
}

/**
 * @brief Vertical-strategy evaluator.
 *
 * Each partition decomposes into maximal runs of consecutive layers; every run
 * pays the boundary send/receive terms of the sequential rule independently,
 * and the partition accumulates them. A contiguous vertical plan therefore
 * evaluates exactly like the matching sequential plan.
 */
inline FleetSummary energy_vertical(const NetworkModel& model, const DeviceProfile& profile,
                                    const VerticalPlan& plan) {
    validate_plan(model, plan);
    const auto runs = decompose_subpartitions(plan);
    std::vector<EnergyBreakdown> result;
    result.reserve(runs.size());
    for (int j = 0; j < plan.partitions; ++j) {
        double comp = 0.0;
        double in_comm = 0.0;
        double ex_comm = 0.0;
        for (const auto& [first, last] : runs[static_cast<std::size_t>(j)]) {
            const EnergyBreakdown run = sequential_group_energy(model, profile, first, last, j + 1);
            comp += run.comp;
            in_comm += run.in_comm;
            ex_comm += run.ex_comm;
        }
        result.push_back(make_breakdown(j + 1, comp, in_comm, ex_comm));
    }
    return summarize(std::move(result), single_device_energy(model, profile));
}

/// How long a battery sustains repeated inferences, and how many images fit.
struct BatteryLifetime {
    double battery_joules = 0.0;
    double seconds = 0.0;
    std::uint64_t images = 0;

    double days() const { return seconds / 86400.0; }
};

/**
 * @brief Lifetime arithmetic for a device drawing energy_per_image_j every
 * time_per_image_s.
 *
 * Battery joules are capacity * 3600 * voltage / 1000; runtime divides them by
 * the average power draw; the image count is floored.
 */
inline BatteryLifetime battery_lifetime(double capacity_mah, double voltage_v,
                                        double energy_per_image_j, double time_per_image_s) {
    if (!(capacity_mah > 0) || !(voltage_v > 0) || !(energy_per_image_j > 0) ||
        !(time_per_image_s > 0)) {
        throw validation_error("battery_lifetime requires positive inputs");
    }
    BatteryLifetime life;
    life.battery_joules = capacity_mah * 3600.0 * voltage_v / 1000.0;
    const double power_watts = energy_per_image_j / time_per_image_s;
    life.seconds = life.battery_joules / power_watts;
    life.images = static_cast<std::uint64_t>(std::floor(life.seconds / time_per_image_s));
    return life;
}

} // namespace edgepart
