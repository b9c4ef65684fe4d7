#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "edgepart/energy.hpp"
#include "edgepart/formats.hpp"

namespace edgepart {

inline constexpr const char* kBreakdownCsvHeader =
    "strategy,partitions,partition_index,comp_J,in_comm_J,ex_comm_J,total_J,normalized_max";

/// One row per partition plus a final `max` summary row.
inline std::string breakdown_csv(Strategy strategy, const FleetSummary& summary) {
    std::ostringstream out;
    out << kBreakdownCsvHeader << "\n";
    const int partitions = static_cast<int>(summary.per_partition.size());
    for (const EnergyBreakdown& b : summary.per_partition) {
        out << to_string(strategy) << "," << partitions << "," << b.partition << ","
            << format_number(b.comp) << "," << format_number(b.in_comm) << ","
            << format_number(b.ex_comm) << "," << format_number(b.total) << ","
            << format_number(b.total / summary.single_device_total) << "\n";
    }
    const EnergyBreakdown& top =
        summary.per_partition[static_cast<std::size_t>(summary.max_partition) - 1];
    out << to_string(strategy) << "," << partitions << ",max," << format_number(top.comp) << ","
        << format_number(top.in_comm) << "," << format_number(top.ex_comm) << ","
        << format_number(summary.max_energy) << "," << format_number(summary.normalized_max)
        << "\n";
    return out.str();
}

inline nlohmann::json breakdown_json(Strategy strategy, const FleetSummary& summary) {
    nlohmann::json doc;
    doc["strategy"] = to_string(strategy);
    doc["partitions"] = static_cast<int>(summary.per_partition.size());
    nlohmann::json rows = nlohmann::json::array();
    for (const EnergyBreakdown& b : summary.per_partition) {
        rows.push_back({{"partition_index", b.partition},
                        {"comp_J", b.comp},
                        {"in_comm_J", b.in_comm},
                        {"ex_comm_J", b.ex_comm},
                        {"total_J", b.total},
                        {"normalized_max", b.total / summary.single_device_total}});
    }
    doc["per_partition"] = std::move(rows);
    doc["max_energy_J"] = summary.max_energy;
    doc["max_partition"] = summary.max_partition;
    doc["normalized_max"] = summary.normalized_max;
    doc["baseline_single_device_J"] = summary.single_device_total;
    return doc;
}

/// One cell of the strategy x device-count sweep.
struct SweepRow {
    Strategy strategy = Strategy::data;
    int device_count = 1;
    double max_energy = 0.0;
    double normalized_max = 0.0;
    double baseline_single_device = 0.0;
};

inline constexpr const char* kSweepCsvHeader =
    "strategy,device_count,max_energy_J,normalized_max,baseline_single_device_J";

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << kSweepCsvHeader << "\n";
    for (const SweepRow& row : rows) {
        out << to_string(row.strategy) << "," << row.device_count << ","
            << format_number(row.max_energy) << "," << format_number(row.normalized_max) << ","
            << format_number(row.baseline_single_device) << "\n";
    }
    return out.str();
}

inline nlohmann::json sweep_json(const std::vector<SweepRow>& rows) {
    nlohmann::json items = nlohmann::json::array();
    for (const SweepRow& row : rows) {
        items.push_back({{"strategy", to_string(row.strategy)},
                         {"device_count", row.device_count},
                         {"max_energy_J", row.max_energy},
                         {"normalized_max", row.normalized_max},
                         {"baseline_single_device_J", row.baseline_single_device}});
    }
    return nlohmann::json{{"rows", std::move(items)}};
}

} // namespace edgepart
