#pragma once

#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace lmoment {

// Thin wrappers so the library builds with or without OpenMP.
inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

inline void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

// Evaluates fn(i) for i in [0, n) into a slot vector.  Each slot is written by
// exactly one iteration, so the result is identical for any thread count; any
// reduction over the slots must then happen in index order on the caller side.
template <class T, class Fn>
std::vector<T> parallel_table(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i)
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
#else
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
#endif
    return out;
}

// Serial reference for parallel_table; kept so tests and the benchmark can
// compare the two paths bit for bit.
template <class T, class Fn>
std::vector<T> serial_table(std::size_t n, Fn&& fn) {
    std::vector<T> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
}

} // namespace lmoment
