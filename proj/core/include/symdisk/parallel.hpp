#pragma once

#include <cstddef>
#include <functional>

namespace symdisk {

/// Worker count: SYMDISK_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads, in contiguous
/// index blocks. Results must go to per-index slots; the exception thrown for
/// the lowest index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace symdisk
