#pragma once

#include <cstddef>
#include <functional>

namespace absf {

/// Worker count: ABSF_THREADS when set to a positive integer, otherwise the hardware concurrency.
int default_thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers (0 = default_thread_count()).
/// Indices are claimed dynamically, so body must only write to slots owned by its index.
/// The first exception thrown by any body is rethrown after all workers stop.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body, int threads = 0);

} // namespace absf
