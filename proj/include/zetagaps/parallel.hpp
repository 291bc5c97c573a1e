#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace zetagaps {

// splitmix64 step; advances state and returns the next value.
std::uint64_t splitmix64(std::uint64_t& state);

// Deterministic per-stream seed for (seed, index), independent of how
// the streams are scheduled across threads.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t index);

// Runs fn(0..n-1) on up to n_threads threads (strided assignment).
// n_threads <= 1 runs inline. The first exception thrown by any fn is
// rethrown after all threads join. Callers must make fn(i) write only
// to slot i of preallocated storage so results never depend on
// scheduling.
void parallel_for(std::size_t n, int n_threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace zetagaps
