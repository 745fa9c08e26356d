#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace dualweb {

// Chunked index-space partition. Workers must write to disjoint slots;
// reductions happen sequentially afterwards so results never depend on the
// worker count.
template <typename Fn>
void parallel_for(std::size_t n, unsigned n_threads, Fn&& body) {
    if (n == 0) return;
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, n));
    if (n_threads <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> threads;
    const std::size_t chunk = (n + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
        const std::size_t begin = std::min<std::size_t>(static_cast<std::size_t>(t) * chunk, n);
        const std::size_t end = std::min<std::size_t>(begin + chunk, n);
        if (begin < end) threads.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& t : threads) t.join();
}

} // namespace dualweb
