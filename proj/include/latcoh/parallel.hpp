#ifndef LATCOH_PARALLEL_HPP
#define LATCOH_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace latcoh
{

// Pool size: LATCOH_THREADS if set to a positive integer, else the hardware count.
inline std::size_t worker_count()
{
    if (const char *env = std::getenv("LATCOH_THREADS")) {
        try {
            const long v = std::stol(env);
            if (v > 0) {
                return static_cast<std::size_t>(v);
            }
        } catch (const std::exception &) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * out[k] = f(k) for k < n, computed on a pool of workers pulling indices from
 * a shared counter. Results land in index order, so output does not depend on
 * scheduling. The first exception thrown by any task is rethrown.
 */
template <typename R, typename F>
std::vector<R> parallel_map(std::size_t n, F &&f, std::size_t workers = worker_count())
{
    std::vector<R> out(n);
    workers = std::max<std::size_t>(1, std::min(workers, n));
    if (workers == 1) {
        for (std::size_t k = 0; k < n; ++k) {
            out[k] = f(k);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto run = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= n) {
                return;
            }
            try {
                out[k] = f(k);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next.store(n);
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t) {
        pool.emplace_back(run);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (error) {
        std::rethrow_exception(error);
    }
    return out;
}

} // namespace latcoh

#endif
