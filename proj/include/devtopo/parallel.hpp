#pragma once

#if defined(DEVTOPO_HAVE_OPENMP)
#include <omp.h>
#endif

namespace devtopo::par {

#if defined(DEVTOPO_HAVE_OPENMP)
inline constexpr bool kOpenMP = true;
inline int max_threads() { return omp_get_max_threads(); }
inline int thread_num() { return omp_get_thread_num(); }
inline void set_threads(int n) { omp_set_num_threads(n); }
#else
inline constexpr bool kOpenMP = false;
inline int max_threads() { return 1; }
inline int thread_num() { return 0; }
inline void set_threads(int) {}
#endif

}  // namespace devtopo::par
