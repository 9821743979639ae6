#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace hardrange {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Splits [0, total) into fixed-size chunks, runs `work` on each chunk and
// folds the partial results in chunk order. Chunk boundaries and the fold
// order do not depend on the thread count, so the result is identical for
// any number of threads as long as `merge` is a pure function.
template <class Partial, class Work, class Merge>
Partial parallel_reduce(std::size_t total, unsigned threads, std::size_t chunk_size,
                        Partial init, Work&& work, Merge&& merge) {
    if (total == 0) return init;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t chunks = (total + chunk_size - 1) / chunk_size;
    const unsigned nthreads = std::min<std::size_t>(resolve_threads(threads), chunks);

    std::vector<Partial> partials(chunks, init);
    if (nthreads <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            const std::size_t b = c * chunk_size;
            partials[c] = work(b, std::min(b + chunk_size, total));
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) {
            pool.emplace_back([&]() {
                for (std::size_t c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
                    const std::size_t b = c * chunk_size;
                    partials[c] = work(b, std::min(b + chunk_size, total));
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    Partial acc = init;
    for (std::size_t c = 0; c < chunks; ++c) acc = merge(acc, partials[c]);
    return acc;
}

}  // namespace hardrange
