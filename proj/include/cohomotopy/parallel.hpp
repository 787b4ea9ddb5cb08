#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace cohomotopy {

/// Upper bound on worker threads used by data-parallel loops. Results never
/// depend on this value: every loop writes disjoint, index-addressed output.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Calls fn(i) for every i in [begin, end), split into contiguous chunks.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, Fn&& fn)
{
    const std::size_t n = end > begin ? end - begin : 0;
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), n / 4096 + 1));
    if (workers <= 1) {
        for (std::size_t i = begin; i < end; ++i)
            fn(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = begin + w * chunk;
        std::size_t hi = std::min(end, lo + chunk);
        if (lo >= hi)
            break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i)
                fn(i);
        });
    }
    for (auto& t : pool)
        t.join();
}

}  // namespace cohomotopy
