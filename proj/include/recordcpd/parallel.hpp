#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace recordcpd {

// Run fn(begin, end) over a contiguous partition of [0, n) into `chunks`
// ranges. Work items must be independent and write to disjoint slots, so
// the result is identical for any chunk count.
inline void run_chunked(std::size_t n, unsigned chunks,
                        const std::function<void(std::size_t, std::size_t)>& fn) {
    if (n == 0) return;
    if (chunks <= 1 || n == 1) {
        fn(0, n);
        return;
    }
    const std::size_t nchunks = std::min<std::size_t>(chunks, n);
    std::vector<std::thread> pool;
    pool.reserve(nchunks);
    const std::size_t base = n / nchunks;
    const std::size_t extra = n % nchunks;
    std::size_t begin = 0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        const std::size_t len = base + (c < extra ? 1 : 0);
        pool.emplace_back(fn, begin, begin + len);
        begin += len;
    }
    for (auto& th : pool) th.join();
}

} // namespace recordcpd
