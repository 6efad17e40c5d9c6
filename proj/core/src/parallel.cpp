#include "orbilearn/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace orbilearn {

namespace {
thread_local int g_parallel_depth = 0;
}

unsigned max_threads() {
    if (const char* env = std::getenv("ORBILEARN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const unsigned cap = max_threads();
    if (cap <= 1 || n == 1 || g_parallel_depth > 0) {
        ++g_parallel_depth;
        try {
            for (std::size_t i = 0; i < n; ++i) fn(i);
        } catch (...) {
            --g_parallel_depth;
            throw;
        }
        --g_parallel_depth;
        return;
    }

    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, n));
    std::atomic<std::size_t> next(0);
    std::exception_ptr error;
    std::atomic<bool> failed(false);

    auto body = [&]() {
        ++g_parallel_depth;
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) break;
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
        --g_parallel_depth;
    };

    std::vector<std::thread> threads;
    threads.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) threads.emplace_back(body);
    body();
    for (std::thread& t : threads) t.join();
    if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace orbilearn
