#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace feynmot {

/// Worker count: the last value passed to set_default_threads, else the
/// FEYNMOT_THREADS environment variable, else hardware concurrency.
std::size_t default_threads();
void set_default_threads(std::size_t threads);

/// Runs body(chunk) for chunk in [0, chunks) on up to `threads` workers.
/// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t chunks, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace feynmot
