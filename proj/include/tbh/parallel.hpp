#pragma once

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tbh::par {

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

// Parallel loop over [0, n).  Each index writes only its own outputs, so
// results do not depend on the thread count; reductions are done by the
// caller over per-index slots, in index order.
template <class F>
void for_each(int n, F&& body) {
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) body(i);
}

template <class F>
void for_each_serial(int n, F&& body) {
    for (int i = 0; i < n; ++i) body(i);
}

} // namespace tbh::par
