#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace unchained::par {

enum class Mode {
  Serial, ///< single-threaded reference path
  OpenMP, ///< OpenMP kernels (falls back to serial when compiled without OpenMP)
};

/// Currently selected execution mode. Defaults to OpenMP when available.
Mode mode();
void set_mode(Mode m);

/// True when the binary was compiled with OpenMP support.
bool openmp_compiled();

int max_threads();

/// Keeps indices i in [0,n) with pred(i), in ascending order.
///
/// The OpenMP kernel splits [0,n) into contiguous per-thread blocks and
/// concatenates the per-block results in block order, so serial and parallel
/// runs produce identical output.
std::vector<std::uint64_t> filter_indices(std::uint64_t n,
                                          const std::function<bool(std::uint64_t)>& pred);

/// Serial reference implementation of filter_indices, kept for testing.
std::vector<std::uint64_t> filter_indices_serial(std::uint64_t n,
                                                 const std::function<bool(std::uint64_t)>& pred);

/// Runs body(i) for all i in [0,n). The body must be safe to run concurrently;
/// any shared accumulation is the caller's responsibility.
void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& body);

} // namespace unchained::par
