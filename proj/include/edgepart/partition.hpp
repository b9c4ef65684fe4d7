#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "edgepart/model.hpp"

namespace edgepart {

/**
 * @brief Data-partitioning plan: every device runs all layers on a height
 * slice of each output tensor.
 *
 * heights[i][j] is the slice height of layer i+1 (0-based vector over layers)
 * owned by partition j. Slices are stacked in partition order, so cumulative
 * sums give the row interval each partition produces.
 */
struct DataPlan {
    int partitions = 1;
    std::vector<std::vector<int>> heights;
};

/**
 * @brief Horizontal plan: every device runs all layers with a subset of each
 * layer's neurons (output channels).
 *
 * neuron_counts is all-zero for weightless layers; channel_counts covers every
 * layer so the evaluators can form workload fractions for the whole chain.
 */
struct HorizontalPlan {
    int partitions = 1;
    std::vector<std::vector<int>> neuron_counts;
    std::vector<std::vector<int>> channel_counts;
};

/// Contiguous layer groups, as inclusive 1-based id ranges covering the chain.
struct SequentialPlan {
    int partitions = 1;
    std::vector<std::pair<int, int>> groups;
};

/// Free layer-to-partition assignment; assignment[i] is the 0-based partition
/// of layer i+1. Every partition index must be used at least once.
struct VerticalPlan {
    int partitions = 1;
    std::vector<int> assignment;
};

/**
 * @brief Splits `total` units into `partitions` balanced counts.
 *
 * Counts differ by at most one. The remainder units occupy a window of slots
 * whose start rotates with the 1-based layer_index, so uneven remainders are
 * spread across partitions over the depth of a chain. When total < partitions
 * the same rule leaves exactly `total` slots at one unit each, rotating the
 * occupied window per layer (round-robin for height-1 layers).
 */
inline std::vector<int> split_heights(int total, int partitions, int layer_index) {
    if (total < 1 || partitions < 1) {
        throw validation_error("split requires total >= 1 and partitions >= 1");
    }
    const int base = total / partitions;
    const int remainder = total % partitions;
    const int offset = (layer_index - 1) % partitions;
    std::vector<int> counts(static_cast<std::size_t>(partitions), base);
    for (int k = 0; k < partitions; ++k) {
        const int rotated = (k - offset + partitions) % partitions;
        if (rotated < remainder) {
            counts[static_cast<std::size_t>(k)] += 1;
        }
    }
    return counts;
}

/// Input rows one partition must assemble to produce out_height output rows:
/// (out_height - 1) * stride + window_h, or 0 for an empty slice.
inline int required_input_height(int out_height, int stride, int window_h) {
    if (out_height <= 0) {
        return 0;
    }
    return (out_height - 1) * stride + window_h;
}

/**
 * @brief Rows of the producing layer's output that partition j must fetch from
 * neighbours under the data strategy.
 *
 * Partition j of the consumer assembles a contiguous input slab; the rows of
 * that slab outside the interval partition j itself produced are the comm
 * height. Padding never contributes: the slab is truncated to rows that exist,
 * so boundary windows that would read padding request no halo. The result is
 * clamped into [0, slab height], which only matters when produced and needed
 * intervals do not overlap at all (impossible for balanced splits).
 *
 * producer_heights are the slice heights of layer i's output, consumer_heights
 * those of layer i+1; `consumer` supplies window and stride. j is 0-based.
 */
inline int comm_height(const LayerSpec& consumer, std::span<const int> producer_heights,
                       std::span<const int> consumer_heights, int j) {
    const std::size_t slot = static_cast<std::size_t>(j);
    if (producer_heights.size() != consumer_heights.size() || slot >= producer_heights.size()) {
        throw validation_error("comm_height: partition vectors disagree or index out of range");
    }
    const long long producer_total =
        std::accumulate(producer_heights.begin(), producer_heights.end(), 0LL);
    const int window = consumer.effective_window_h();
    const int stride = consumer.effective_stride();

    long long produced_begin = 1;
    for (std::size_t k = 0; k < slot; ++k) {
        produced_begin += producer_heights[k];
    }
    const long long produced_end = produced_begin + producer_heights[slot];

    long long needed_begin = 1;
    for (std::size_t k = 0; k < slot; ++k) {
        needed_begin += static_cast<long long>(stride) * consumer_heights[k];
    }
    long long needed_end =
        needed_begin + required_input_height(consumer_heights[slot], stride, window);
    // rows past the producer's real output would be padding in the original network
    needed_end = std::min(needed_end, producer_total + 1);
    if (needed_end <= needed_begin) {
        return 0;
    }

    long long missing = 0;
    if (needed_begin < produced_begin && needed_end <= produced_end) {
        missing = produced_begin - needed_begin;
    } else if (needed_begin < produced_begin && needed_end > produced_end) {
        missing = (produced_begin - needed_begin) + (needed_end - produced_end);
    } else if (needed_begin >= produced_begin && needed_end > produced_end) {
        missing = needed_end - produced_end;
    }
    missing = std::clamp<long long>(missing, 0, needed_end - needed_begin);
    return static_cast<int>(missing);
}

/// Balanced height split of every layer's output tensor.
inline DataPlan plan_data(const NetworkModel& model, int partitions) {
    if (partitions < 1) {
        throw validation_error("plan_data requires partitions >= 1");
    }
    DataPlan plan;
    plan.partitions = partitions;
    plan.heights.reserve(model.layers.size());
    for (const LayerSpec& layer : model.layers) {
        plan.heights.push_back(split_heights(layer.out_shape.height, partitions, layer.id));
    }
    return plan;
}

/// Balanced neuron split for weighted layers, balanced channel split everywhere.
inline HorizontalPlan plan_horizontal(const NetworkModel& model, int partitions) {
    if (partitions < 1) {
        throw validation_error("plan_horizontal requires partitions >= 1");
    }
    HorizontalPlan plan;
    plan.partitions = partitions;
    plan.neuron_counts.reserve(model.layers.size());
    plan.channel_counts.reserve(model.layers.size());
    for (const LayerSpec& layer : model.layers) {
        if (is_weighted(layer.kind)) {
            plan.neuron_counts.push_back(split_heights(layer.neurons, partitions, layer.id));
        } else {
            plan.neuron_counts.emplace_back(static_cast<std::size_t>(partitions), 0);
        }
        plan.channel_counts.push_back(split_heights(layer.out_shape.channels, partitions, layer.id));
    }
    return plan;
}

/**
 * @brief Maximal runs of consecutive layers within each partition.
 *
 * Returns, per partition, the ordered list of inclusive 1-based id ranges.
 * Concatenating every run of every partition and sorting by first id
 * reproduces 1..L.
 */
inline std::vector<std::vector<std::pair<int, int>>> decompose_subpartitions(const VerticalPlan& plan) {
    std::vector<std::vector<std::pair<int, int>>> runs(static_cast<std::size_t>(plan.partitions));
    const int layer_count = static_cast<int>(plan.assignment.size());
    for (int i = 0; i < layer_count; ++i) {
        const int partition = plan.assignment[static_cast<std::size_t>(i)];
        auto& own = runs.at(static_cast<std::size_t>(partition));
        if (!own.empty() && own.back().second == i) {
            own.back().second = i + 1;
        } else {
            own.emplace_back(i + 1, i + 1);
        }
    }
    return runs;
}

inline void validate_plan(const NetworkModel& model, const DataPlan& plan) {
    if (plan.partitions < 1) {
        throw validation_error("data plan needs at least one partition");
    }
    if (static_cast<int>(plan.heights.size()) != model.layer_count()) {
        throw validation_error("data plan covers " + std::to_string(plan.heights.size()) +
                               " layers but the model has " + std::to_string(model.layer_count()));
    }
    for (const LayerSpec& layer : model.layers) {
        const auto& row = plan.heights[static_cast<std::size_t>(layer.id) - 1];
        if (static_cast<int>(row.size()) != plan.partitions) {
            throw validation_error("data plan layer " + std::to_string(layer.id) +
                                   " has the wrong partition count");
        }
        long long sum = 0;
        for (int h : row) {
            if (h < 0) {
                throw validation_error("data plan layer " + std::to_string(layer.id) +
                                       " has a negative height");
            }
            sum += h;
        }
        if (sum != layer.out_shape.height) {
            throw validation_error("data plan layer " + std::to_string(layer.id) +
                                   " heights sum to " + std::to_string(sum) + ", expected " +
                                   std::to_string(layer.out_shape.height));
        }
    }
}

inline void validate_plan(const NetworkModel& model, const HorizontalPlan& plan) {
    if (plan.partitions < 1) {
        throw validation_error("horizontal plan needs at least one partition");
    }
    if (static_cast<int>(plan.neuron_counts.size()) != model.layer_count() ||
        static_cast<int>(plan.channel_counts.size()) != model.layer_count()) {
        throw validation_error("horizontal plan layer count does not match the model");
    }
    for (const LayerSpec& layer : model.layers) {
        const auto& neurons = plan.neuron_counts[static_cast<std::size_t>(layer.id) - 1];
        const auto& channels = plan.channel_counts[static_cast<std::size_t>(layer.id) - 1];
        if (static_cast<int>(neurons.size()) != plan.partitions ||
            static_cast<int>(channels.size()) != plan.partitions) {
            throw validation_error("horizontal plan layer " + std::to_string(layer.id) +
                                   " has the wrong partition count");
        }
        long long neuron_sum = 0;
        long long channel_sum = 0;
        for (int n : neurons) {
            if (n < 0) {
                throw validation_error("horizontal plan layer " + std::to_string(layer.id) +
                                       " has a negative neuron count");
            }
            neuron_sum += n;
        }
        for (int c : channels) {
            if (c < 0) {
                throw validation_error("horizontal plan layer " + std::to_string(layer.id) +
                                       " has a negative channel count");
            }
            channel_sum += c;
        }
        if (neuron_sum != layer.neurons) {
            throw validation_error("horizontal plan layer " + std::to_string(layer.id) +
                                   " neurons sum to " + std::to_string(neuron_sum) + ", expected " +
                                   std::to_string(layer.neurons));
        }
        if (channel_sum != layer.out_shape.channels) {
            throw validation_error("horizontal plan layer " + std::to_string(layer.id) +
                                   " channels sum to " + std::to_string(channel_sum) +
                                   ", expected " + std::to_string(layer.out_shape.channels));
        }
    }
}

inline void validate_plan(const NetworkModel& model, const SequentialPlan& plan) {
    if (plan.partitions < 1 || static_cast<int>(plan.groups.size()) != plan.partitions) {
        throw validation_error("sequential plan group count does not match its partition count");
    }
    int expected_first = 1;
    for (const auto& [first, last] : plan.groups) {
        if (first != expected_first || last < first) {
            throw validation_error("sequential plan groups must be consecutive, nonempty and "
                                   "exhaustive; offending group starts at " + std::to_string(first));
        }
        expected_first = last + 1;
    }
    if (expected_first != model.layer_count() + 1) {
        throw validation_error("sequential plan does not cover the whole chain");
    }
}

inline void validate_plan(const NetworkModel& model, const VerticalPlan& plan) {
    if (plan.partitions < 1) {
        throw validation_error("vertical plan needs at least one partition");
    }
    if (static_cast<int>(plan.assignment.size()) != model.layer_count()) {
        throw validation_error("vertical plan assigns " + std::to_string(plan.assignment.size()) +
                               " layers but the model has " + std::to_string(model.layer_count()));
    }
    std::vector<int> uses(static_cast<std::size_t>(plan.partitions), 0);
    for (int p : plan.assignment) {
        if (p < 0 || p >= plan.partitions) {
            throw validation_error("vertical plan assignment references partition " +
                                   std::to_string(p + 1) + " outside 1.." +
                                   std::to_string(plan.partitions));
        }
        ++uses[static_cast<std::size_t>(p)];
    }
    for (int p = 0; p < plan.partitions; ++p) {
        if (uses[static_cast<std::size_t>(p)] == 0) {
            throw validation_error("vertical plan leaves partition " + std::to_string(p + 1) +
                                   " empty");
        }
    }
}

/// The sequential plan equivalent to a vertical assignment, if every partition
/// is a single contiguous run in partition order.
inline SequentialPlan to_sequential(const VerticalPlan& plan) {
    const auto runs = decompose_subpartitions(plan);
    SequentialPlan seq;
    seq.partitions = plan.partitions;
    for (const auto& partition_runs : runs) {
        if (partition_runs.size() != 1) {
            throw validation_error("vertical plan is not contiguous");
        }
        seq.groups.push_back(partition_runs.front());
    }
    std::sort(seq.groups.begin(), seq.groups.end());
    return seq;
}

} // namespace edgepart
