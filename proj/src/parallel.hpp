#pragma once

#include <cstdint>
#include <exception>
#include <mutex>

namespace bandpredict::detail {

// Runs body(i) for i in [0, count) across OpenMP threads. The first exception
// thrown by any iteration is rethrown on the calling thread once the loop ends.
template <class Body>
void parallel_for(std::int64_t count, Body&& body, bool enable = true) {
  std::exception_ptr error;
  std::mutex guard;
#pragma omp parallel for schedule(static) if (enable)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      body(i);
    } catch (...) {
      std::lock_guard lock(guard);
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace bandpredict::detail
