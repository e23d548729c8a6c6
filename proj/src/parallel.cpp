#include "nodal/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>

namespace nodal {

namespace {

int initial_thread_count() {
    if (const char* env = std::getenv("NODAL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return std::min(n, 64);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 16u));
}

std::atomic<int>& thread_count_slot() {
    static std::atomic<int> count{initial_thread_count()};
    return count;
}

}  // namespace

int thread_count() { return thread_count_slot().load(); }

void set_thread_count(int n) { thread_count_slot().store(std::max(1, std::min(n, 64))); }

namespace detail {

std::vector<std::pair<std::uint64_t, std::uint64_t>> chunk_ranges(std::uint64_t n, int workers) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
    if (n == 0) return ranges;
    std::uint64_t w = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, n));
    std::uint64_t base = n / w, extra = n % w, start = 0;
    for (std::uint64_t c = 0; c < w; ++c) {
        std::uint64_t len = base + (c < extra ? 1 : 0);
        ranges.emplace_back(start, start + len);
        start += len;
    }
    return ranges;
}

}  // namespace detail

}  // namespace nodal
