#pragma once

#include <cstddef>
#include <functional>

namespace mwc {

/// Worker count from MWC_THREADS, else hardware concurrency; at least 1.
int thread_budget();

/// Runs body(i) for i in [0, count). Work items are handed out dynamically,
/// so callers must make results independent of execution order. Calls made
/// from inside a running parallel_for execute sequentially on the caller.
/// If any item throws, the exception from the lowest index is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

} // namespace mwc
