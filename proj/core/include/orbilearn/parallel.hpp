#pragma once

#include <cstddef>
#include <functional>

namespace orbilearn {

/// Thread cap: ORBILEARN_THREADS when set (minimum 1), otherwise the number
/// of logical processors.
unsigned max_threads();

/// Runs fn(i) for i in [0,n). Each index writes only its own slot, and any
/// reduction happens afterwards in index order, so results do not depend on
/// scheduling or the thread cap. Nested calls run serially.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace orbilearn
