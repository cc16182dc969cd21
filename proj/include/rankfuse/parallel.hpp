#ifndef RANKFUSE_PARALLEL_HPP
#define RANKFUSE_PARALLEL_HPP

#include <functional>
#include <thread>
#include <vector>

namespace rankfuse {

// Runs fn(i) for i in [0, count) on up to `threads` workers. Work items must
// be independent; determinism comes from per-item RNG substreams, so results
// do not depend on the thread count.
inline void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (int i = t; i < count; i += threads) fn(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& err : errors)
        if (err) std::rethrow_exception(err);
}

// Default worker count: --threads flag value, RANKFUSE_THREADS, or hardware.
int default_thread_count();

}  // namespace rankfuse

#endif
