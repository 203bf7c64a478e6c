#pragma once

#include <cstddef>
#include <functional>

namespace ier {

/// Worker cap: IER_SPECTRA_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Indices are
/// handed out dynamically; callers write results into per-index slots so the
/// outcome does not depend on scheduling. The first exception thrown by any
/// body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace ier
