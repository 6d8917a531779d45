#pragma once

#include <cstddef>
#include <functional>

namespace blf {

/// Worker cap: min(hardware, BLFORM_THREADS) when the env var is set.
/// Results must not depend on this value; tasks write to disjoint slots.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) on up to worker_count() threads with a static
/// block partition. fn must only touch state owned by index i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace blf
