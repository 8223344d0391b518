#ifndef CUBIC_MW_PARALLEL_HPP
#define CUBIC_MW_PARALLEL_HPP

#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace cubic_mw::detail {

/// Runs `worker` on `threads` threads (inline when threads <= 1) and
/// rethrows the first exception raised by any of them.
template <class F>
void run_parallel(F& worker, unsigned threads) {
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex m;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                worker();
            } catch (...) {
                std::lock_guard lock(m);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace cubic_mw::detail

#endif
