#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace probegen {

// Runs fn(i) for i in [0, n) on up to `parallelism` threads. The first
// exception thrown stops further scheduling and is rethrown to the caller.
template <typename Fn>
void parallel_for(std::size_t n, std::size_t parallelism, Fn&& fn) {
    parallelism = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(n, 1));
    if (parallelism == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
        std::vector<std::jthread> workers;
        workers.reserve(parallelism);
        for (std::size_t t = 0; t < parallelism; ++t) {
            workers.emplace_back([&] {
                for (;;) {
                    if (failed.load()) {
                        return;
                    }
                    std::size_t i = next.fetch_add(1);
                    if (i >= n) {
                        return;
                    }
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) {
                            error = std::current_exception();
                        }
                        failed = true;
                    }
                }
            });
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace probegen
