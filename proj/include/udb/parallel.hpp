#pragma once

#include <cstdint>
#include <thread>
#include <vector>

// Deterministic static work splitting. Results must not depend on the worker
// count, so callers combine per-chunk results in chunk order.

namespace udb {

// min(hardware_concurrency, UDB_THREADS); at least 1.
int worker_count();

// Runs f(begin, end) over a static partition of [0, n) into one contiguous
// chunk per worker. f must only touch state owned by its chunk.
template <class F>
void parallel_chunks(std::int64_t n, F&& f) {
    const int workers = n > 1 ? worker_count() : 1;
    if (workers <= 1) {
        if (n > 0) f(std::int64_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::int64_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const std::int64_t lo = w * chunk;
        const std::int64_t hi = std::min<std::int64_t>(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] { f(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace udb
