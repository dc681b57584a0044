#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cosy {

/// True when the library was built with OpenMP.
inline bool openmp_enabled() {
#ifdef _OPENMP
    return true;
#else
    return false;
#endif
}

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

/// Data-parallel index loop. body(i) must only write to slot i of its output;
/// results are then identical for any thread count. The serial path (parallel
/// = false, or builds without OpenMP) is the reference implementation the
/// tests compare against. Exceptions from the parallel region are captured
/// and rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t count, bool parallel, F&& body) {
#ifdef _OPENMP
    if (parallel && count > 1) {
        std::exception_ptr first_error = nullptr;
        std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 16)
        for (long long i = 0; i < static_cast<long long>(count); ++i) {
            try {
                body(static_cast<std::size_t>(i));
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
    }
#else
    (void)parallel;
#endif
    for (std::size_t i = 0; i < count; ++i) body(i);
}

}  // namespace cosy
