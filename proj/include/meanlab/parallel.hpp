#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace meanlab {

// Worker cap shared by all parallel loops (set from the CLI --threads flag).
inline int& detail_thread_cap() {
    static int cap = std::max(1u, std::thread::hardware_concurrency());
    return cap;
}
inline int max_threads() { return detail_thread_cap(); }
inline void set_max_threads(int n) { detail_thread_cap() = std::max(1, n); }

// Runs fn(slot) for slot = 0..n_slots-1 on up to max_threads() workers.
//
// Work is partitioned by slot index, never by thread id, so the content of
// each slot's partial result is independent of how many threads actually ran.
// Callers combine the slots in ascending order to get bit-reproducible sums.
inline void parallel_slots(int n_slots, const std::function<void(int)>& fn) {
    const int workers = std::min(n_slots, max_threads());
    if (workers <= 1) {
        for (int s = 0; s < n_slots; ++s) fn(s);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    std::exception_ptr first_error;
    std::mutex error_mu;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int s = w; s < n_slots; s += workers) fn(s);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Fixed slot count used by the deterministic reductions. 16 slots keeps the
// per-slot accumulator arrays small while leaving headroom for parallelism.
inline constexpr int kReductionSlots = 16;

// Splits [0, n) into kReductionSlots contiguous stripes; returns the
// half-open bounds of stripe s.
inline std::pair<std::int64_t, std::int64_t> slot_stripe(std::int64_t n, int s) {
    const std::int64_t lo = n * s / kReductionSlots;
    const std::int64_t hi = n * (s + 1) / kReductionSlots;
    return {lo, hi};
}

}  // namespace meanlab
