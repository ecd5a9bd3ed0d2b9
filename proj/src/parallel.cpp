#include "pretsums/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pretsums {

unsigned thread_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PRETSUMS_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto run = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace pretsums
