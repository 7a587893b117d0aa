#pragma once

#include <cstddef>
#include <exception>
#include <vector>

namespace oodeval::detail {

// Runs fn(i) for i in [0, n). In parallel mode the first exception by index
// is rethrown after the loop, matching what the serial loop would throw.
template <typename Fn>
void for_each_index(std::size_t n, bool parallel, Fn&& fn)
{
    if (!parallel) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace oodeval::detail
