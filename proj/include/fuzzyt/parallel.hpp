#pragma once

// Fixed-partition data parallelism. Work is split into contiguous blocks whose
// boundaries depend only on the problem size and the block count, so results
// merged in block order are identical for any number of worker threads.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fuzzyt {

namespace detail {
inline std::atomic<unsigned>& jobs_setting() {
    static std::atomic<unsigned> jobs{0};
    return jobs;
}
}  // namespace detail

/// Worker count: set_default_jobs() if called, else FUZZYT_JOBS, else hardware concurrency.
inline unsigned default_jobs() {
    if (unsigned j = detail::jobs_setting().load()) return j;
    if (const char* env = std::getenv("FUZZYT_JOBS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (...) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline void set_default_jobs(unsigned jobs) { detail::jobs_setting().store(jobs); }

struct BlockRange {
    std::size_t begin = 0;
    std::size_t end = 0;
};

/// Splits [0, n) into `blocks` contiguous ranges of near-equal size.
inline std::vector<BlockRange> partition(std::size_t n, std::size_t blocks) {
    blocks = std::max<std::size_t>(1, std::min(blocks, std::max<std::size_t>(n, 1)));
    std::vector<BlockRange> out;
    out.reserve(blocks);
    for (std::size_t b = 0; b < blocks; ++b) {
        out.push_back({n * b / blocks, n * (b + 1) / blocks});
    }
    return out;
}

/// Runs fn(block_index, range) for every block, on up to `jobs` threads.
/// The first exception thrown by any block is rethrown.
template <class Fn>
void for_each_block(const std::vector<BlockRange>& ranges, unsigned jobs, Fn&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(ranges.size())));
    if (jobs == 1) {
        for (std::size_t b = 0; b < ranges.size(); ++b) fn(b, ranges[b]);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= ranges.size()) return;
            try {
                fn(b, ranges[b]);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(ranges.size());
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t + 1 < jobs; ++t) threads.emplace_back(worker);
    worker();
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

/// Parallel loop over [0, n) for independent per-index work. Small ranges run inline.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, unsigned jobs = default_jobs(), std::size_t grain = 4096) {
    if (jobs <= 1 || n < 2 * grain) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const auto ranges = partition(n, std::min<std::size_t>(jobs * 4, n / grain));
    for_each_block(ranges, jobs, [&](std::size_t, BlockRange r) {
        for (std::size_t i = r.begin; i < r.end; ++i) fn(i);
    });
}

}  // namespace fuzzyt
