#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace redsched::detail {

// Runs fn(i) for every i in [0, n) on a small worker pool.  Callers hand
// each index its own output slot, so assembly order never depends on
// completion order.  The first exception aborts the sweep and is rethrown
// on the calling thread.
template <class Fn>
void parallel_for_index(std::size_t n, Fn&& fn) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers > n) workers = static_cast<unsigned>(n);
    if (workers < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (;;) {
            if (failed.load(std::memory_order_relaxed)) return;
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= n) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) error = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (std::thread& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace redsched::detail
