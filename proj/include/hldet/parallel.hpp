#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hldet {

/// Process-wide cap on worker threads (the CLI `--jobs` flag).
inline std::atomic<int>& max_jobs() {
    static std::atomic<int> jobs{static_cast<int>(
        std::max(1u, std::thread::hardware_concurrency()))};
    return jobs;
}

inline void set_max_jobs(int n) { max_jobs().store(std::max(1, n)); }

/// Runs fn(i) for i in [0, n). Work items must write only to slots they own
/// (e.g. result[i]); outputs are then independent of the worker count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int jobs = std::min<int>(max_jobs().load(), static_cast<int>(n));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(jobs));
    for (int t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) break;
                fn(i);
            }
        });
    }
    for (auto& w : workers) w.join();
}

} // namespace hldet
