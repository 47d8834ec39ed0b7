#pragma once

#include <cstddef>
#include <functional>

namespace hgpade {

/// Worker count: HGPADE_THREADS if set and positive, else hardware concurrency.
std::size_t thread_count();

/// Runs body(0..count-1) on up to thread_count() threads. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hgpade
