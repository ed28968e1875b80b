#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace sigtail {

/// Runs f(i) for i in [0, n) across a thread pool and combines the
/// per-chunk partials in fixed index order. Chunk boundaries depend
/// only on n, and each chunk is reduced sequentially by ascending i,
/// so the result is bitwise independent of the number of workers.
///
/// Acc must be default-constructible; accumulate(acc, i) folds one item,
/// combine(acc, other) folds a finished chunk into the running result.
template <class Acc, class Accumulate, class Combine>
Acc parallel_reduce(std::size_t n, Accumulate accumulate, Combine combine, int threads = 0) {
    constexpr std::size_t kChunks = 64;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    std::size_t chunk = (n + kChunks - 1) / kChunks;
    if (chunk == 0) chunk = 1;
    std::size_t nchunks = (n + chunk - 1) / chunk;

    std::vector<Acc> partials(nchunks);
    if (threads == 1 || nchunks <= 1) {
        for (std::size_t c = 0; c < nchunks; ++c) {
            Acc acc{};
            std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
            for (std::size_t i = lo; i < hi; ++i) accumulate(acc, i);
            partials[c] = std::move(acc);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t c = next.fetch_add(1);
                if (c >= nchunks) return;
                Acc acc{};
                std::size_t lo = c * chunk, hi = std::min(n, lo + chunk);
                for (std::size_t i = lo; i < hi; ++i) accumulate(acc, i);
                partials[c] = std::move(acc);
            }
        };
        std::vector<std::thread> pool;
        int nw = std::min<std::size_t>(static_cast<std::size_t>(threads), nchunks);
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Acc result{};
    for (std::size_t c = 0; c < nchunks; ++c) combine(result, partials[c]);
    return result;
}

}  // namespace sigtail
