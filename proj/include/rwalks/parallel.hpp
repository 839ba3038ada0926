#pragma once

// Replicate-level parallelism: results land in a vector indexed by replicate,
// so reductions are deterministic regardless of the worker count.

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rwalks {

inline unsigned default_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

template <class T, class Fn>
std::vector<T> parallel_replicates(std::uint64_t count, unsigned workers, Fn fn) {
    std::vector<T> results(count);
    if (count == 0) return results;
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < count; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::uint64_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                results[i] = fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    unsigned n = std::min<std::uint64_t>(workers, count);
    pool.reserve(n);
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

} // namespace rwalks
