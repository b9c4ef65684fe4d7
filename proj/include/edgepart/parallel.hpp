#pragma once

#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace edgepart {

/// splitmix64 finalizer; cheap, well-distributed seed mixing.
inline std::uint64_t mix_seed(std::uint64_t value) {
    value += 0x9e3779b97f4a7c15ULL;
    value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
    value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
    return value ^ (value >> 31);
}

/// Independent substream seed for (stream, index) pairs, e.g. one stream per
/// GA generation and one index per individual. Results never depend on the
/// order substreams are drawn in.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return mix_seed(mix_seed(seed ^ (stream * 0xd1342543de82ef95ULL)) ^ index);
}

/**
 * @brief Runs fn(i) for i in [0, count) on a small thread pool.
 *
 * Each index writes only its own output slot, so the result is independent of
 * how indices land on threads. If any call throws, the lowest-index exception
 * is rethrown after all workers finish.
 */
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    if (count == 0) {
        return;
    }
    // at least two workers even on single-core hosts, so the concurrent path
    // is always the one exercised
    std::size_t workers = std::max<std::size_t>(std::thread::hardware_concurrency(), 2);
    workers = std::min({workers, count, static_cast<std::size_t>(8)});
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < count; i += workers) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    for (const std::exception_ptr& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }
}

} // namespace edgepart
