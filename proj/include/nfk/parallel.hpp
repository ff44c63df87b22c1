#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace nfk {

// Worker cap: NFK_THREADS when set, otherwise serial. Pure sample sweeps
// are the only users, so reductions stay deterministic (max only).
inline unsigned thread_cap() {
    if (const char* env = std::getenv("NFK_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned threads = std::min<std::size_t>(thread_cap(), count ? count : 1);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t]() {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace nfk
