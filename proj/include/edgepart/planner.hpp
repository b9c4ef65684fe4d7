#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <set>
#include <vector>

#include "edgepart/energy.hpp"
#include "edgepart/parallel.hpp"
#include "edgepart/partition.hpp"

namespace edgepart {

/**
 * @brief Genetic-search knobs. The defaults are deliberately conventional:
 * tournament selection of 3, single-point crossover, per-gene mutation,
 * elitism of one.
 */
struct GAConfig {
    int population_size = 64;
    int generations = 200;
    double mutation_rate = 0.05;
    int tournament_size = 3;
    std::uint64_t seed = 0;
};

inline void validate_config(const GAConfig& config) {
    if (config.population_size < 1 || config.generations < 1) {
        throw validation_error("GA population and generation counts must be >= 1");
    }
    if (config.mutation_rate < 0.0 || config.mutation_rate > 1.0) {
        throw validation_error("GA mutation rate must lie in [0, 1]");
    }
    if (config.tournament_size < 2 || config.tournament_size > config.population_size) {
        throw validation_error("GA tournament size must lie in [2, population_size]");
    }
}

/// What the planners minimize across partitions.
enum class Objective {
    max_energy, ///< largest per-partition total (the default figure of merit)
    spread,     ///< difference between largest and smallest per-partition totals
};

inline double apply_objective(const FleetSummary& summary, Objective objective) {
    if (objective == Objective::max_energy) {
        return summary.max_energy;
    }
    double low = summary.per_partition.front().total;
    for (const EnergyBreakdown& b : summary.per_partition) {
        low = std::min(low, b.total);
    }
    return summary.max_energy - low;
}

namespace detail {

/**
 * Generic minimizing GA. All randomness is drawn from substreams keyed by
 * (generation, individual), so the search is reproducible no matter how the
 * fitness evaluations are scheduled; evaluations run on a thread pool. The
 * returned genome is the best individual ever evaluated.
 */
template <typename Genome, typename MakeRandom, typename Crossover, typename Mutate,
          typename Evaluate>
Genome genetic_minimize(const GAConfig& config, MakeRandom make_random, Crossover crossover,
                        Mutate mutate, Evaluate evaluate) {
    validate_config(config);
    const std::size_t population_size = static_cast<std::size_t>(config.population_size);
    std::vector<Genome> population(population_size);
    std::vector<double> fitness(population_size);

    for (std::size_t k = 0; k < population_size; ++k) {
        std::mt19937_64 rng(derive_seed(config.seed, 0, k));
        population[k] = make_random(rng);
    }
    parallel_for(population_size, [&](std::size_t k) { fitness[k] = evaluate(population[k]); });

    Genome best = population.front();
    double best_fitness = fitness.front();
    auto track_best = [&] {
        for (std::size_t k = 0; k < population_size; ++k) {
            if (fitness[k] < best_fitness) {
                best_fitness = fitness[k];
                best = population[k];
            }
        }
    };
    track_best();

    std::vector<Genome> children(population_size);
    for (int generation = 1; generation <= config.generations; ++generation) {
        children[0] = best; // elite
        for (std::size_t k = 1; k < population_size; ++k) {
            std::mt19937_64 rng(derive_seed(config.seed, static_cast<std::uint64_t>(generation), k));
            auto tournament = [&]() -> const Genome& {
                std::uniform_int_distribution<std::size_t> pick(0, population_size - 1);
                std::size_t winner = pick(rng);
                for (int round = 1; round < config.tournament_size; ++round) {
                    const std::size_t challenger = pick(rng);
                    if (fitness[challenger] < fitness[winner]) {
                        winner = challenger;
                    }
                }
                return population[winner];
            };
            const Genome& parent_a = tournament();
            const Genome& parent_b = tournament();
            Genome child = crossover(parent_a, parent_b, rng);
            mutate(child, rng);
            children[k] = std::move(child);
        }
        population.swap(children);
        parallel_for(population_size, [&](std::size_t k) { fitness[k] = evaluate(population[k]); });
        track_best();
    }
    return best;
}

/// Cut positions (sorted, distinct, in [1, L-1]) to contiguous groups.
inline SequentialPlan cuts_to_plan(const std::vector<int>& cuts, int layer_count) {
    SequentialPlan plan;
    plan.partitions = static_cast<int>(cuts.size()) + 1;
    int first = 1;
    for (int cut : cuts) {
        plan.groups.emplace_back(first, cut);
        first = cut + 1;
    }
    plan.groups.emplace_back(first, layer_count);
    return plan;
}

} // namespace detail

/**
 * @brief Exact sequential planner: dynamic programming over cut positions,
 * minimizing the largest per-partition energy (boundary transfer terms
 * included). Ties resolve to the lexicographically smallest cut vector.
 */
inline SequentialPlan plan_sequential_dp(const NetworkModel& model, const DeviceProfile& profile,
                                         int partitions) {
    const int layer_count = model.layer_count();
    if (partitions < 1) {
        throw validation_error("plan_sequential_dp requires partitions >= 1");
    }
    if (partitions > layer_count) {
        throw infeasible_error("cannot split " + std::to_string(layer_count) + " layers into " +
                               std::to_string(partitions) + " contiguous groups");
    }
    // cost[lo][hi]: energy of group [lo, hi] as a partition of this chain
    std::vector<std::vector<double>> cost(
        static_cast<std::size_t>(layer_count) + 1,
        std::vector<double>(static_cast<std::size_t>(layer_count) + 1, 0.0));
    for (int lo = 1; lo <= layer_count; ++lo) {
        for (int hi = lo; hi <= layer_count; ++hi) {
            cost[static_cast<std::size_t>(lo)][static_cast<std::size_t>(hi)] =
                sequential_group_energy(model, profile, lo, hi, 1).total;
        }
    }
    const double inf = std::numeric_limits<double>::infinity();
    // suffix[m][s]: best achievable max-energy splitting layers s..L into m groups
    std::vector<std::vector<double>> suffix(
        static_cast<std::size_t>(partitions) + 1,
        std::vector<double>(static_cast<std::size_t>(layer_count) + 2, inf));
    for (int s = 1; s <= layer_count; ++s) {
        suffix[1][static_cast<std::size_t>(s)] = cost[static_cast<std::size_t>(s)][static_cast<std::size_t>(layer_count)];
    }
    for (int m = 2; m <= partitions; ++m) {
        for (int s = 1; s + m - 1 <= layer_count; ++s) {
            double bestv = inf;
            for (int e = s; e + m - 1 <= layer_count; ++e) {
                const double v = std::max(cost[static_cast<std::size_t>(s)][static_cast<std::size_t>(e)],
                                          suffix[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(e) + 1]);
                bestv = std::min(bestv, v);
            }
            suffix[static_cast<std::size_t>(m)][static_cast<std::size_t>(s)] = bestv;
        }
    }
    const double optimum = suffix[static_cast<std::size_t>(partitions)][1];
    // front-to-back reconstruction, always taking the earliest feasible cut
    std::vector<int> cuts;
    int start = 1;
    for (int m = partitions; m > 1; --m) {
        for (int e = start; e + m - 1 <= layer_count; ++e) {
            const double v = std::max(cost[static_cast<std::size_t>(start)][static_cast<std::size_t>(e)],
                                      suffix[static_cast<std::size_t>(m) - 1][static_cast<std::size_t>(e) + 1]);
            if (v <= optimum) {
                cuts.push_back(e);
                start = e + 1;
                break;
            }
        }
    }
    return detail::cuts_to_plan(cuts, layer_count);
}

/**
 * @brief Stochastic sequential planner. The chromosome is the sorted cut
 * vector; crossover splices parent prefixes and repairs duplicates.
 * Deterministic for a given seed, evaluation parallelism included.
 */
inline SequentialPlan plan_sequential_ga(const NetworkModel& model, const DeviceProfile& profile,
                                         int partitions, const GAConfig& config,
                                         Objective objective = Objective::max_energy) {
    const int layer_count = model.layer_count();
    if (partitions < 1) {
        throw validation_error("plan_sequential_ga requires partitions >= 1");
    }
    if (partitions > layer_count) {
        throw infeasible_error("cannot split " + std::to_string(layer_count) + " layers into " +
                               std::to_string(partitions) + " contiguous groups");
    }
    if (partitions == 1 || partitions == layer_count) {
        // only one feasible plan exists
        std::vector<int> cuts;
        for (int c = 1; c < partitions; ++c) {
            cuts.push_back(c);
        }
        return detail::cuts_to_plan(cuts, layer_count);
    }

    const int cut_count = partitions - 1;
    auto fill_missing = [&](std::set<int>& cuts, std::mt19937_64& rng) {
        std::uniform_int_distribution<int> any_cut(1, layer_count - 1);
        while (static_cast<int>(cuts.size()) < cut_count) {
            cuts.insert(any_cut(rng));
        }
    };
    auto make_random = [&](std::mt19937_64& rng) {
        std::set<int> cuts;
        fill_missing(cuts, rng);
        return std::vector<int>(cuts.begin(), cuts.end());
    };
    auto crossover = [&](const std::vector<int>& a, const std::vector<int>& b,
                         std::mt19937_64& rng) {
        std::uniform_int_distribution<int> point(0, cut_count);
        const int split = point(rng);
        std::set<int> cuts(a.begin(), a.begin() + split);
        cuts.insert(b.begin() + split, b.end());
        fill_missing(cuts, rng);
        return std::vector<int>(cuts.begin(), cuts.end());
    };
    auto mutate = [&](std::vector<int>& genome, std::mt19937_64& rng) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::uniform_int_distribution<int> any_cut(1, layer_count - 1);
        bool changed = false;
        for (int& gene : genome) {
            if (coin(rng) < config.mutation_rate) {
                gene = any_cut(rng);
                changed = true;
            }
        }
        if (changed) {
            std::set<int> cuts(genome.begin(), genome.end());
            fill_missing(cuts, rng);
            genome.assign(cuts.begin(), cuts.end());
        }
    };
    auto evaluate = [&](const std::vector<int>& genome) {
        const SequentialPlan plan = detail::cuts_to_plan(genome, layer_count);
        return apply_objective(energy_sequential(model, profile, plan), objective);
    };
    const std::vector<int> best =
        detail::genetic_minimize<std::vector<int>>(config, make_random, crossover, mutate, evaluate);
    return detail::cuts_to_plan(best, layer_count);
}

namespace detail {

/// Moves layers from crowded partitions onto empty ones until every partition
/// index is used. Keeps the assignment valid for any L >= M.
inline void repair_assignment(std::vector<int>& assignment, int partitions, std::mt19937_64& rng) {
    std::vector<int> uses(static_cast<std::size_t>(partitions), 0);
    for (int p : assignment) {
        ++uses[static_cast<std::size_t>(p)];
    }
    for (int missing = 0; missing < partitions; ++missing) {
        if (uses[static_cast<std::size_t>(missing)] > 0) {
            continue;
        }
        std::vector<int> donors;
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            if (uses[static_cast<std::size_t>(assignment[i])] > 1) {
                donors.push_back(static_cast<int>(i));
            }
        }
        std::uniform_int_distribution<std::size_t> pick(0, donors.size() - 1);
        const int layer = donors[pick(rng)];
        --uses[static_cast<std::size_t>(assignment[static_cast<std::size_t>(layer)])];
        assignment[static_cast<std::size_t>(layer)] = missing;
        ++uses[static_cast<std::size_t>(missing)];
    }
}

} // namespace detail

/**
 * @brief Stochastic vertical planner over free layer-to-partition assignments.
 *
 * The chromosome is the assignment vector itself; a repair step keeps every
 * partition nonempty after crossover and mutation.
 */
inline VerticalPlan plan_vertical_ga(const NetworkModel& model, const DeviceProfile& profile,
                                     int partitions, const GAConfig& config,
                                     Objective objective = Objective::max_energy) {
    const int layer_count = model.layer_count();
    if (partitions < 1) {
        throw validation_error("plan_vertical_ga requires partitions >= 1");
    }
    if (partitions > layer_count) {
        throw infeasible_error("cannot assign " + std::to_string(layer_count) + " layers to " +
                               std::to_string(partitions) + " nonempty partitions");
    }
    if (partitions == 1) {
        return VerticalPlan{1, std::vector<int>(static_cast<std::size_t>(layer_count), 0)};
    }

    auto make_random = [&](std::mt19937_64& rng) {
        std::uniform_int_distribution<int> any_partition(0, partitions - 1);
        std::vector<int> assignment(static_cast<std::size_t>(layer_count));
        for (int& gene : assignment) {
            gene = any_partition(rng);
        }
        detail::repair_assignment(assignment, partitions, rng);
        return assignment;
    };
    auto crossover = [&](const std::vector<int>& a, const std::vector<int>& b,
                         std::mt19937_64& rng) {
        std::uniform_int_distribution<int> point(0, layer_count);
        const int split = point(rng);
        std::vector<int> child(a.begin(), a.begin() + split);
        child.insert(child.end(), b.begin() + split, b.end());
        detail::repair_assignment(child, partitions, rng);
        return child;
    };
    auto mutate = [&](std::vector<int>& genome, std::mt19937_64& rng) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        std::uniform_int_distribution<int> any_partition(0, partitions - 1);
        for (int& gene : genome) {
            if (coin(rng) < config.mutation_rate) {
                gene = any_partition(rng);
            }
        }
        detail::repair_assignment(genome, partitions, rng);
    };
    auto evaluate = [&](const std::vector<int>& genome) {
        const VerticalPlan plan{partitions, genome};
        return apply_objective(energy_vertical(model, profile, plan), objective);
    };
    const std::vector<int> best =
        detail::genetic_minimize<std::vector<int>>(config, make_random, crossover, mutate, evaluate);
    return VerticalPlan{partitions, best};
}

/**
 * @brief Exact vertical planner: enumerates every surjective assignment of L
 * layers onto M partitions in lexicographic order, so ties resolve to the
 * lexicographically smallest assignment.
 *
 * Refuses when M^L exceeds 10^7 candidate assignments.
 */
inline VerticalPlan exhaustive_vertical(const NetworkModel& model, const DeviceProfile& profile,
                                        int partitions,
                                        Objective objective = Objective::max_energy) {
    const int layer_count = model.layer_count();
    if (partitions < 1) {
        throw validation_error("exhaustive_vertical requires partitions >= 1");
    }
    if (partitions > layer_count) {
        throw infeasible_error("cannot assign " + std::to_string(layer_count) + " layers to " +
                               std::to_string(partitions) + " nonempty partitions");
    }
    double space = 1.0;
    for (int i = 0; i < layer_count; ++i) {
        space *= partitions;
    }
    if (space > 1e7) {
        throw infeasible_error("exhaustive vertical search space " + std::to_string(partitions) +
                               "^" + std::to_string(layer_count) + " ~= " + std::to_string(space) +
                               " exceeds the 1e7 guard");
    }

    std::vector<int> assignment(static_cast<std::size_t>(layer_count), 0);
    std::vector<int> best_assignment;
    double best_value = std::numeric_limits<double>::infinity();
    std::vector<int> uses(static_cast<std::size_t>(partitions), 0);
    while (true) {
        std::fill(uses.begin(), uses.end(), 0);
        for (int p : assignment) {
            ++uses[static_cast<std::size_t>(p)];
        }
        if (std::find(uses.begin(), uses.end(), 0) == uses.end()) {
            const VerticalPlan plan{partitions, assignment};
            const double value = apply_objective(energy_vertical(model, profile, plan), objective);
            if (value < best_value) {
                best_value = value;
                best_assignment = assignment;
            }
        }
        // odometer increment; the last layer varies fastest, which makes the
        // visit order lexicographic over assignment vectors
        int pos = layer_count - 1;
        while (pos >= 0) {
            if (++assignment[static_cast<std::size_t>(pos)] < partitions) {
                break;
            }
            assignment[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            break;
        }
    }
    return VerticalPlan{partitions, best_assignment};
}

} // namespace edgepart
