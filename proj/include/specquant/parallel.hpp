#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace specquant {

/// Number of worker threads used by Monte Carlo loops. Defaults to the value
/// of SPECQUANT_THREADS if set, else the hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned threads);

/// Runs body(i) for i in [0, count) on up to thread_count() threads. Each
/// index is visited exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace specquant
