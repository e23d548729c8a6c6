#pragma once

#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace nodal {

// Worker count for enumeration/grid loops. Defaults to the NODAL_THREADS
// environment variable, else hardware concurrency. Results are always
// reduced in deterministic index order regardless of the worker count.
int thread_count();
void set_thread_count(int n);

namespace detail {
std::vector<std::pair<std::uint64_t, std::uint64_t>> chunk_ranges(std::uint64_t n, int workers);
}

// Runs fn(begin, end) over a fixed chunking of [0, n) and returns the per-chunk
// results in chunk order. The chunking depends only on n and the configured
// worker count, so output is byte-stable.
template <typename T, typename Fn>
std::vector<T> parallel_map(std::uint64_t n, Fn&& fn) {
    auto ranges = detail::chunk_ranges(n, thread_count());
    std::vector<T> results(ranges.size());
    if (ranges.size() <= 1) {
        for (size_t c = 0; c < ranges.size(); ++c) results[c] = fn(ranges[c].first, ranges[c].second);
        return results;
    }
    std::vector<std::exception_ptr> errors(ranges.size());
    std::vector<std::thread> threads;
    threads.reserve(ranges.size());
    for (size_t c = 0; c < ranges.size(); ++c)
        threads.emplace_back([&, c] {
            try {
                results[c] = fn(ranges[c].first, ranges[c].second);
            } catch (...) {
                errors[c] = std::current_exception();
            }
        });
    for (auto& t : threads) t.join();
    // First failing chunk wins, independent of scheduling.
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

// Per-index map: slot i receives fn(i).
template <typename T, typename Fn>
std::vector<T> parallel_map_indexed(std::uint64_t n, Fn&& fn) {
    std::vector<T> results(n);
    auto chunks = parallel_map<int>(n, [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) results[i] = fn(i);
        return 0;
    });
    (void)chunks;
    return results;
}

}  // namespace nodal
