#pragma once

#include <cstddef>
#include <functional>

namespace pcpdc {

/// Upper bound on worker threads used by kernel assembly. Defaults to 1.
void set_max_threads(std::size_t n);
std::size_t max_threads();

/// Reads PCPDC_THREADS and applies it; unset or invalid leaves the cap alone.
void apply_thread_env();

/// Runs body(i) for i in [0, count) split into contiguous blocks over at
/// most max_threads() workers. Each index is visited exactly once; callers
/// write disjoint outputs so results do not depend on the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace pcpdc
