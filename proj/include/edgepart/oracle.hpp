#pragma once

#include <span>
#include <vector>

#include "edgepart/partition.hpp"

namespace edgepart {

/// Element counts one partition moves: on-device traffic plus what crosses the
/// device boundary in each direction.
struct PartitionVolumes {
    long long internal_elements = 0;
    long long external_in_elements = 0;
    long long external_out_elements = 0;
};

/// Per-partition traffic tally. Every externally sent element is received by
/// someone, so the in and out columns always sum to the same value.
struct CommVolumes {
    std::vector<PartitionVolumes> per_partition;
};

/**
 * @brief Row-enumeration oracle for one consecutive layer pair.
 *
 * Walks every row of the input slab each consumer partition assembles and
 * counts the rows that fall outside the interval the partition produced
 * itself. No interval case analysis: one membership test per row. Returns the
 * remote row count per partition.
 */
inline std::vector<long long> remote_rows_for_pair(const LayerSpec& consumer,
                                                   std::span<const int> producer_heights,
                                                   std::span<const int> consumer_heights) {
    const std::size_t partitions = producer_heights.size();
    if (consumer_heights.size() != partitions) {
        throw validation_error("remote_rows_for_pair: partition vectors disagree");
    }
    const int window = consumer.effective_window_h();
    const int stride = consumer.effective_stride();
    long long producer_total = 0;
    for (int h : producer_heights) {
        producer_total += h;
    }

    std::vector<long long> remote(partitions, 0);
    long long produced_begin = 1;
    long long consumed_rows_before = 0; // output rows of earlier partitions
    for (std::size_t j = 0; j < partitions; ++j) {
        const long long produced_end = produced_begin + producer_heights[j];
        if (consumer_heights[j] > 0) {
            const long long first_out = consumed_rows_before + 1;
            const long long last_out = consumed_rows_before + consumer_heights[j];
            const long long slab_begin = (first_out - 1) * stride + 1;
            long long slab_end = (last_out - 1) * stride + window + 1;
            // rows past the real tensor would be padding; nobody sends those
            slab_end = std::min(slab_end, producer_total + 1);
            for (long long row = slab_begin; row < slab_end; ++row) {
                if (row < produced_begin || row >= produced_end) {
                    ++remote[j];
                }
            }
        }
        produced_begin = produced_end;
        consumed_rows_before += consumer_heights[j];
    }
    return remote;
}

/// Channel-enumeration oracle for one layer of a horizontal plan: walks every
/// output channel, finds its owner from the cumulative channel counts, and
/// tallies per partition how many channels arrive from elsewhere.
inline std::vector<long long> remote_channels_for_layer(std::span<const int> channel_counts) {
    const std::size_t partitions = channel_counts.size();
    std::vector<long long> remote(partitions, 0);
    long long total = 0;
    for (int c : channel_counts) {
        total += c;
    }
    long long owned_begin = 0;
    for (std::size_t j = 0; j < partitions; ++j) {
        const long long owned_end = owned_begin + channel_counts[j];
        for (long long channel = 0; channel < total; ++channel) {
            if (channel < owned_begin || channel >= owned_end) {
                ++remote[j];
            }
        }
        owned_begin = owned_end;
    }
    return remote;
}

/**
 * @brief Brute-force traffic simulation for a data plan.
 *
 * For every consecutive layer pair, each required input row is marked locally
 * produced or remote; remote rows count as external_in for the consumer and
 * external_out for the partition owning the row (ownership by the produced
 * row intervals). Internal traffic is each partition's produced share of every
 * layer output.
 */
inline CommVolumes simulate_data_volumes(const NetworkModel& model, const DataPlan& plan) {
    validate_plan(model, plan);
    CommVolumes volumes;
    volumes.per_partition.resize(static_cast<std::size_t>(plan.partitions));
    const int layer_count = model.layer_count();

    for (int i = 0; i < layer_count; ++i) {
        const LayerSpec& layer = model.layers[static_cast<std::size_t>(i)];
        const auto& heights = plan.heights[static_cast<std::size_t>(i)];
        const long long row_elements =
            static_cast<long long>(layer.out_shape.width) * layer.out_shape.channels;
        for (int j = 0; j < plan.partitions; ++j) {
            volumes.per_partition[static_cast<std::size_t>(j)].internal_elements +=
                static_cast<long long>(heights[static_cast<std::size_t>(j)]) * row_elements;
        }
        if (i + 1 >= layer_count) {
            continue;
        }
        const LayerSpec& consumer = model.layers[static_cast<std::size_t>(i) + 1];
        const auto& consumer_heights = plan.heights[static_cast<std::size_t>(i) + 1];
        const int window = consumer.effective_window_h();
        const int stride = consumer.effective_stride();

        // produced-interval starts, for row ownership lookups
        std::vector<long long> produced_begin(static_cast<std::size_t>(plan.partitions) + 1, 1);
        for (int k = 0; k < plan.partitions; ++k) {
            produced_begin[static_cast<std::size_t>(k) + 1] =
                produced_begin[static_cast<std::size_t>(k)] + heights[static_cast<std::size_t>(k)];
        }
        auto owner_of = [&](long long row) {
            for (int k = 0; k < plan.partitions; ++k) {
                if (row < produced_begin[static_cast<std::size_t>(k) + 1]) {
                    return k;
                }
            }
            return plan.partitions - 1;
        };

        long long consumed_rows_before = 0;
        for (int j = 0; j < plan.partitions; ++j) {
            const int out_rows = consumer_heights[static_cast<std::size_t>(j)];
            if (out_rows > 0) {
                const long long slab_begin = consumed_rows_before * stride + 1;
                long long slab_end = (consumed_rows_before + out_rows - 1) * stride + window + 1;
                slab_end = std::min(slab_end,
                                    static_cast<long long>(layer.out_shape.height) + 1);
                for (long long row = slab_begin; row < slab_end; ++row) {
                    if (row < produced_begin[static_cast<std::size_t>(j)] ||
                        row >= produced_begin[static_cast<std::size_t>(j) + 1]) {
                        volumes.per_partition[static_cast<std::size_t>(j)].external_in_elements +=
                            row_elements;
                        volumes.per_partition[static_cast<std::size_t>(owner_of(row))]
                            .external_out_elements += row_elements;
                    }
                }
            }
            consumed_rows_before += out_rows;
        }
    }
    return volumes;
}

/**
 * @brief Brute-force traffic simulation for a horizontal plan.
 *
 * Every partition needs all channels of every layer output except the last
 * layer's; channels it did not produce arrive from the owning partition.
 */
inline CommVolumes simulate_horizontal_volumes(const NetworkModel& model,
                                               const HorizontalPlan& plan) {
    validate_plan(model, plan);
    CommVolumes volumes;
    volumes.per_partition.resize(static_cast<std::size_t>(plan.partitions));
    const int layer_count = model.layer_count();

    for (int i = 0; i < layer_count; ++i) {
        const LayerSpec& layer = model.layers[static_cast<std::size_t>(i)];
        const auto& channels = plan.channel_counts[static_cast<std::size_t>(i)];
        const long long plane_elements =
            static_cast<long long>(layer.out_shape.height) * layer.out_shape.width;
        for (int j = 0; j < plan.partitions; ++j) {
            volumes.per_partition[static_cast<std::size_t>(j)].internal_elements +=
                static_cast<long long>(channels[static_cast<std::size_t>(j)]) * plane_elements;
        }
        if (i + 1 >= layer_count) {
            continue;
        }
        // channel by channel: the owner ships one plane to everyone else
        for (int owner = 0; owner < plan.partitions; ++owner) {
            const long long owned = channels[static_cast<std::size_t>(owner)];
            if (owned == 0) {
                continue;
            }
            for (int j = 0; j < plan.partitions; ++j) {
                if (j == owner) {
                    continue;
                }
                volumes.per_partition[static_cast<std::size_t>(j)].external_in_elements +=
                    owned * plane_elements;
                volumes.per_partition[static_cast<std::size_t>(owner)].external_out_elements +=
                    owned * plane_elements;
            }
        }
    }
    return volumes;
}

} // namespace edgepart
