#pragma once

#include <cstddef>
#include <functional>

namespace gfc {

/// Worker count: GFC_THREADS if set and positive, else hardware concurrency.
unsigned thread_budget();

/// Runs body(i) for i in [0, count) on up to thread_budget() threads. The
/// exception raised by the lowest failing index is rethrown after joining.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace gfc
