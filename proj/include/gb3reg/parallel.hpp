#pragma once

#include <cstddef>
#include <functional>

namespace gb3reg {

// Runs fn(0) ... fn(count - 1) across up to `workers` threads.  Indices
// are claimed from a shared counter, so schedules vary between runs;
// callers must make fn write only to per-index slots (results merged
// after the join) for deterministic output.  The first exception thrown
// by any fn is rethrown on the calling thread after all workers finish.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

// Hardware concurrency with a floor of one.
unsigned default_workers();

}  // namespace gb3reg
