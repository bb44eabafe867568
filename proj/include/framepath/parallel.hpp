#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace framepath {

// Deterministic work-sharing loop: every index writes only its own output
// slot, so the result is identical for any thread count. Reductions over
// the produced values must run in index order afterwards.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (n == 0) return;
    threads = std::max(1u, threads);
    if (threads == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace framepath
