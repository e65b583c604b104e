#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace selfprod {

inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Splits [lo, hi) into width-sized segments and runs
/// fn(seg_lo, seg_hi, worker_id) over them on `threads` workers.
/// Segments are claimed from an atomic counter; fn must be thread-safe
/// across distinct segments.  worker_id < threads.
template <typename Fn>
void for_each_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t width,
                      unsigned threads, Fn&& fn) {
    if (lo >= hi) return;
    width = std::max<std::uint64_t>(width, 1024);
    const std::uint64_t nseg = (hi - lo + width - 1) / width;
    threads = std::min<std::uint64_t>(resolve_threads(threads), nseg);

    if (threads <= 1) {
        for (std::uint64_t s = 0; s < nseg; ++s) {
            std::uint64_t a = lo + s * width;
            fn(a, std::min(hi, a + width), 0u);
        }
        return;
    }

    std::atomic<std::uint64_t> next{0};
    auto worker = [&](unsigned id) {
        for (;;) {
            std::uint64_t s = next.fetch_add(1, std::memory_order_relaxed);
            if (s >= nseg) break;
            std::uint64_t a = lo + s * width;
            fn(a, std::min(hi, a + width), id);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
}

} // namespace selfprod
