#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <utility>

namespace catlab {

// Grid kernels run either serially (reference path, used by tests to pin
// down expected values) or via OpenMP. Every index writes only its own
// output slot, so both paths produce bit-identical results.
enum class ExecPolicy { serial, parallel };

template <class F>
void for_each_index(ExecPolicy policy, std::ptrdiff_t count, F&& f) {
    if (policy == ExecPolicy::parallel) {
#ifdef _OPENMP
        std::exception_ptr first_error;
        std::mutex error_mutex;
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        }
        if (first_error) std::rethrow_exception(first_error);
        return;
#endif
    }
    for (std::ptrdiff_t i = 0; i < count; ++i) f(i);
}

}  // namespace catlab
