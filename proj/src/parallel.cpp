#include "lulc/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lulc::parallel {
namespace {
std::atomic<unsigned> g_max_threads{1};
}

void set_max_threads(unsigned n) { g_max_threads = std::max(1u, n); }
unsigned max_threads() { return g_max_threads; }

std::size_t chunk_count(std::size_t n, std::size_t grain) {
    grain = std::max<std::size_t>(grain, 1);
    return (n + grain - 1) / grain;
}

void for_chunks(std::size_t n, std::size_t grain,
                const std::function<void(std::size_t, std::size_t)>& fn) {
    grain = std::max<std::size_t>(grain, 1);
    const std::size_t chunks = chunk_count(n, grain);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(max_threads(), chunks));
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) fn(c * grain, std::min(n, (c + 1) * grain));
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                fn(c * grain, std::min(n, (c + 1) * grain));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace lulc::parallel
