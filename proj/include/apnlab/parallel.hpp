#pragma once

#include <cstdint>
#include <thread>
#include <vector>

namespace apnlab {

inline unsigned default_jobs() {
    unsigned h = std::thread::hardware_concurrency();
    return h ? h : 1;
}

// jobs = 0 means "use all available parallelism".
inline unsigned resolve_jobs(unsigned jobs) { return jobs ? jobs : default_jobs(); }

// Splits [0, total) into one contiguous chunk per worker and runs
// fn(worker, begin, end) on its own thread. Results must be merged by the
// caller in worker order so that the outcome does not depend on the worker
// count.
template <typename Fn>
void parallel_chunks(std::uint64_t total, unsigned jobs, Fn&& fn) {
    if (total == 0) return;
    std::uint64_t w64 = resolve_jobs(jobs);
    if (w64 > total) w64 = total;
    const unsigned workers = static_cast<unsigned>(w64);
    if (workers <= 1) {
        fn(0u, std::uint64_t{0}, total);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t b = total * w / workers;
        const std::uint64_t e = total * (w + 1) / workers;
        pool.emplace_back([&fn, w, b, e] { fn(w, b, e); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace apnlab
