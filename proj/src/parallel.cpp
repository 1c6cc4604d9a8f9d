#include "slag/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace slag {

namespace {
constexpr std::size_t kChunks = 64;
}

std::size_t n_chunks() { return kChunks; }

std::size_t thread_count() {
    if (const char* env = std::getenv("SLAG_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<std::size_t>(v > 256 ? 256 : v);
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for_chunks(std::size_t n,
                         const std::function<void(std::size_t, std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    const std::size_t chunks = n < kChunks ? n : kChunks;
    const std::size_t workers = std::min(thread_count(), chunks);

    auto chunk_range = [&](std::size_t c, std::size_t& b, std::size_t& e) {
        b = (n * c) / chunks;
        e = (n * (c + 1)) / chunks;
    };

    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            std::size_t b, e;
            chunk_range(c, b, e);
            body(c, b, e);
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            std::size_t b, e;
            chunk_range(c, b, e);
            body(c, b, e);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    parallel_for_chunks(n, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) body(i);
    });
}

}  // namespace slag
