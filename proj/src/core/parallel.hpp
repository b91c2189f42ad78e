// Thin parallel-for / reduction layer. All reductions are chunked with a
// fixed chunk size and accumulated serially over chunks, so results are
// identical for any thread count.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace perikon {

namespace par {

// 0 keeps the current setting; otherwise caps worker threads.
void set_threads(int n);
int threads();

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& range_fn);

template <typename Body>
void for_each(std::int64_t n, Body body) {
    parallel_for(n, [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
}

// Deterministic sum: per-chunk partials computed in parallel, combined in
// chunk order on one thread.
double deterministic_sum(std::int64_t n, const std::function<double(std::int64_t)>& term);

}  // namespace par

}  // namespace perikon
