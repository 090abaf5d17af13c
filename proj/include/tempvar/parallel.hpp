#pragma once

#include <cstddef>
#include <functional>

namespace tempvar {

/// Worker count: TEMPVAR_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs body(i) for i in [begin, end), splitting the range into contiguous
/// blocks over thread_count() workers. Each index is visited exactly once, so
/// bodies that write only to slot i are deterministic.
void parallel_for(std::size_t begin, std::size_t end, const std::function<void(std::size_t)>& body);

}  // namespace tempvar
