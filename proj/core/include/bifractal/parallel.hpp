#pragma once

#include <cstddef>
#include <functional>

namespace bifractal {

/// Worker count from BIFRACTAL_THREADS (default: hardware concurrency, min 1).
std::size_t thread_count();

/// Runs body(begin, end) over disjoint chunks of [0, n). Chunks write
/// disjoint outputs, so results do not depend on the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

} // namespace bifractal
