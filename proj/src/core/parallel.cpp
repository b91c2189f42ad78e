#include "core/parallel.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace perikon {
namespace par {

namespace {
int g_threads = 0;
constexpr std::int64_t kChunk = 4096;
}  // namespace

void set_threads(int n) {
    g_threads = std::max(0, n);
#ifdef _OPENMP
    if (g_threads > 0) omp_set_num_threads(g_threads);
#endif
}

int threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t, std::int64_t)>& range_fn) {
    if (n <= 0) return;
#ifdef _OPENMP
    const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
        const std::int64_t lo = c * kChunk;
        range_fn(lo, std::min(lo + kChunk, n));
    }
#else
    range_fn(0, n);
#endif
}

double deterministic_sum(std::int64_t n, const std::function<double(std::int64_t)>& term) {
    if (n <= 0) return 0.0;
    const std::int64_t nchunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial(static_cast<std::size_t>(nchunks), 0.0);
    parallel_for(n, [&](std::int64_t lo, std::int64_t hi) {
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) s += term(i);
        partial[static_cast<std::size_t>(lo / kChunk)] = s;
    });
    double total = 0.0;
    for (double p : partial) total += p;
    return total;
}

}  // namespace par
}  // namespace perikon
