#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace bsvi {

// Deterministic work partitioning: the chunk layout depends only on the
// problem size, never on the thread count. Workers pull chunks from an
// atomic counter; callers combine per-chunk partials in chunk order, so
// reductions are bit-identical for any --threads value.

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct ChunkRange {
    std::size_t begin, end;
};

inline std::size_t chunk_count(std::size_t n, std::size_t chunk_size = 4096) {
    return n == 0 ? 0 : (n + chunk_size - 1) / chunk_size;
}

inline ChunkRange chunk_range(std::size_t ci, std::size_t n, std::size_t chunk_size = 4096) {
    const std::size_t b = ci * chunk_size;
    const std::size_t e = b + chunk_size < n ? b + chunk_size : n;
    return {b, e};
}

// fn(chunk_index, begin, end) must write only chunk-local state.
inline void for_each_chunk(std::size_t n, int threads,
                           const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                           std::size_t chunk_size = 4096) {
    const std::size_t nchunks = chunk_count(n, chunk_size);
    if (nchunks == 0) return;
    threads = resolve_threads(threads);
    if (threads <= 1 || nchunks == 1) {
        for (std::size_t ci = 0; ci < nchunks; ++ci) {
            const auto r = chunk_range(ci, n, chunk_size);
            fn(ci, r.begin, r.end);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t ci = next.fetch_add(1);
            if (ci >= nchunks) return;
            const auto r = chunk_range(ci, n, chunk_size);
            fn(ci, r.begin, r.end);
        }
    };
    std::vector<std::thread> pool;
    const int nworkers = static_cast<int>(std::min<std::size_t>(threads, nchunks));
    pool.reserve(nworkers);
    for (int i = 0; i < nworkers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// Deterministic sum of f(i) over i in [0,n): per-chunk serial accumulation,
// then a serial combine in chunk order.
inline double deterministic_sum(std::size_t n, int threads,
                                const std::function<double(std::size_t)>& f,
                                std::size_t chunk_size = 4096) {
    std::vector<double> partial(chunk_count(n, chunk_size), 0.0);
    for_each_chunk(
        n, threads,
        [&](std::size_t ci, std::size_t b, std::size_t e) {
            double s = 0.0;
            for (std::size_t i = b; i < e; ++i) s += f(i);
            partial[ci] = s;
        },
        chunk_size);
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

// Mean and standard error of f(i) over i in [0,n), deterministically.
struct MeanStderr {
    double mean = 0.0;
    double stderr_est = 0.0;
};

inline MeanStderr deterministic_mean_stderr(std::size_t n, int threads,
                                            const std::function<double(std::size_t)>& f,
                                            std::size_t chunk_size = 4096) {
    const std::size_t nchunks = chunk_count(n, chunk_size);
    std::vector<double> s1(nchunks, 0.0), s2(nchunks, 0.0);
    for_each_chunk(
        n, threads,
        [&](std::size_t ci, std::size_t b, std::size_t e) {
            double a = 0.0, q = 0.0;
            for (std::size_t i = b; i < e; ++i) {
                const double v = f(i);
                a += v;
                q += v * v;
            }
            s1[ci] = a;
            s2[ci] = q;
        },
        chunk_size);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t ci = 0; ci < nchunks; ++ci) {
        sum += s1[ci];
        sumsq += s2[ci];
    }
    MeanStderr r;
    if (n == 0) return r;
    const double nn = static_cast<double>(n);
    r.mean = sum / nn;
    const double var = sumsq / nn - r.mean * r.mean;
    r.stderr_est = var > 0.0 ? std::sqrt(var / nn) : 0.0;
    return r;
}

}  // namespace bsvi
