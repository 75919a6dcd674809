#pragma once

// Thread-count control and an exception-safe OpenMP loop.

#include <cstdint>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rankstab {

/// Threads used by the parallel kernels: the last set_thread_count() value,
/// else RANKSTAB_THREADS, else the OpenMP default.
int thread_count();
void set_thread_count(int threads);

/// Runs body(i) for i in [0, n) on thread_count() threads with dynamic
/// scheduling. The first exception thrown by any iteration is rethrown.
template <class Body>
void parallel_for(std::int64_t n, Body&& body) {
    std::exception_ptr error;
    std::mutex guard;
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
    for (std::int64_t i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(guard);
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace rankstab
