// Minimal fork-join helper; BEAMLAB_THREADS caps the worker count.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace beamlab {

inline unsigned n_threads() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("BEAMLAB_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, unsigned(v));
    }
    return n;
}

/// Runs fn(chunk_index, begin, end) over [0, n) split into contiguous chunks.
/// Work assignment is deterministic; callers combine results in chunk order.
inline void parallel_chunks(std::size_t n,
                            const std::function<void(unsigned, std::size_t, std::size_t)>& fn) {
    const unsigned nt = std::min<std::size_t>(n_threads(), std::max<std::size_t>(n, 1));
    if (nt <= 1 || n < 2) {
        fn(0, 0, n);
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t lo = n * t / nt, hi = n * (t + 1) / nt;
        pool.emplace_back([&, t, lo, hi] { fn(t, lo, hi); });
    }
    for (auto& th : pool) th.join();
}

} // namespace beamlab
