#pragma once

#include <functional>

#include "tt/shape.hpp"

namespace tt::parallel {

/// 0 restores the hardware default.
void set_num_threads(int n);
int num_threads();

/// Run fn(begin, end) over a partition of [0, n). Blocks until done. Results
/// must be written to disjoint slots so the outcome is thread-count
/// independent.
void for_range(Index n, const std::function<void(Index, Index)>& fn);

}  // namespace tt::parallel
