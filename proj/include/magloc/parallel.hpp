#pragma once

#include <functional>

namespace magloc::detail {

/// Runs fn(i) for every i in [0, count) using up to `threads` workers. Each
/// index must be independently computable (own RNG, own output slot) so the
/// result does not depend on scheduling.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace magloc::detail
