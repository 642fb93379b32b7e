#pragma once

#include <cstddef>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

// OpenMP-parallel loop kernel with a serial reference path. Both paths issue
// the same per-index work in a fixed association order (no parallel
// reductions), so results are bit-identical regardless of mode/thread count.
namespace talbot {

enum class ExecMode { serial, parallel };

/// Process-wide execution mode (default: parallel).
ExecMode& execution_mode();

int max_threads();

template <class F>
void parallel_for(std::size_t n, F&& f, ExecMode mode)
{
#ifdef _OPENMP
    if (mode == ExecMode::parallel) {
        #pragma omp parallel for schedule(static)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i)
            f(static_cast<std::size_t>(i));
        return;
    }
#else
    (void)mode;
#endif
    for (std::size_t i = 0; i < n; ++i)
        f(i);
}

template <class F>
void parallel_for(std::size_t n, F&& f)
{
    parallel_for(n, std::forward<F>(f), execution_mode());
}

} // namespace talbot
