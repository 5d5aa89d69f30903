#pragma once

// Index-parallel loops over independent per-subgroup work. Results must be
// written to per-index slots so the outcome does not depend on scheduling.

#include <cstddef>
#include <functional>

namespace torinv {

/// Caps worker threads; 0 means hardware concurrency. Initialised from the
/// INVARIANTS_THREADS environment variable when set.
void set_thread_limit(std::size_t n);
std::size_t thread_limit();

/// Runs body(i) for i in [0, n). The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace torinv
