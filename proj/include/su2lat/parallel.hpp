#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace su2lat {

/// Worker count for sweep dispatch: hardware concurrency, capped by the
/// SU2LAT_THREADS environment variable when set.
inline int worker_count() {
    int n = int(std::thread::hardware_concurrency());
    if (n < 1)
        n = 1;
    if (const char *env = std::getenv("SU2LAT_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1 && cap < n)
            n = cap;
    }
    return n;
}

/// Runs fn(0..count-1) on a small worker pool. Callers store results into
/// pre-sized slots so output order stays deterministic.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
    int workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mu;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count)
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error)
                        error = std::current_exception();
                    return;
                }
            }
        });
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace su2lat
