#pragma once

#include <algorithm>
#include <vector>

#include "edgepart/energy.hpp"
#include "edgepart/parallel.hpp"
#include "edgepart/planner.hpp"
#include "edgepart/report.hpp"

namespace edgepart {

struct SweepOptions {
    int max_devices = 4;
    GAConfig ga{};
    Objective objective = Objective::max_energy;
};

/// Plans (or, for GA strategies, searches) one strategy at one device count
/// and evaluates it.
inline FleetSummary evaluate_cell(const NetworkModel& model, const DeviceProfile& profile,
                                  Strategy strategy, int devices, const GAConfig& ga,
                                  Objective objective) {
    switch (strategy) {
    case Strategy::data:
        return energy_data(model, profile, plan_data(model, devices));
    case Strategy::horizontal:
        return energy_horizontal(model, profile, plan_horizontal(model, devices));
    case Strategy::sequential:
        return energy_sequential(model, profile,
                                 plan_sequential_ga(model, profile, devices, ga, objective));
    case Strategy::vertical:
        return energy_vertical(model, profile,
                               plan_vertical_ga(model, profile, devices, ga, objective));
    }
    throw validation_error("unhandled strategy");
}

/**
 * @brief Full strategy x device-count sweep, device counts 1..max_devices.
 *
 * Cells evaluate concurrently; rows are sorted by (strategy, device count)
 * before returning, so the report never depends on scheduling. Same seed in,
 * same rows out, byte for byte once formatted.
 */
inline std::vector<SweepRow> run_sweep(const NetworkModel& model, const DeviceProfile& profile,
                                       const SweepOptions& options) {
    if (options.max_devices < 1) {
        throw validation_error("sweep requires max_devices >= 1");
    }
    if (options.max_devices > model.layer_count()) {
        throw infeasible_error("sweep to " + std::to_string(options.max_devices) +
                               " devices is infeasible for the sequential and vertical "
                               "strategies on a " + std::to_string(model.layer_count()) +
                               "-layer chain");
    }
    const Strategy strategies[] = {Strategy::data, Strategy::horizontal, Strategy::sequential,
                                   Strategy::vertical};
    struct Cell {
        Strategy strategy;
        int devices;
    };
    std::vector<Cell> cells;
    for (Strategy strategy : strategies) {
        for (int devices = 1; devices <= options.max_devices; ++devices) {
            cells.push_back({strategy, devices});
        }
    }
    std::vector<SweepRow> rows(cells.size());
    parallel_for(cells.size(), [&](std::size_t index) {
        const Cell& cell = cells[index];
        const FleetSummary summary =
            evaluate_cell(model, profile, cell.strategy, cell.devices, options.ga, options.objective);
        rows[index] = SweepRow{cell.strategy, cell.devices, summary.max_energy,
                               summary.normalized_max, summary.single_device_total};
    });
    std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
        if (a.strategy != b.strategy) {
            return static_cast<int>(a.strategy) < static_cast<int>(b.strategy);
        }
        return a.device_count < b.device_count;
    });
    return rows;
}

} // namespace edgepart
