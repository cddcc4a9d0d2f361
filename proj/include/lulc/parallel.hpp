#pragma once

#include <cstddef>
#include <functional>

namespace lulc {

/// Worker count for data-parallel loops. Reads LULC_THREADS once; falls back
/// to std::thread::hardware_concurrency().
std::size_t worker_count();

/// Runs body(i) for i in [0, n). Work items must write to disjoint slots;
/// results are then independent of scheduling. Exceptions from body are
/// rethrown on the calling thread (first one wins).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace lulc
