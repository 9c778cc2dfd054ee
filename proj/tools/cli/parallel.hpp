#pragma once

#include <cstddef>
#include <functional>

namespace coupled::cli {

/// Worker count: COUPLED_LOWRANK_THREADS when set to a positive integer,
/// otherwise the hardware concurrency (at least 1).
[[nodiscard]] unsigned thread_cap();

/// Calls body(i) for i in [0, count) on up to thread_cap() threads. If any
/// call throws, the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace coupled::cli
