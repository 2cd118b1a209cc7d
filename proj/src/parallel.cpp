#include "unchained/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "unchained/error.hpp"

namespace unchained {

std::uint64_t default_cap() {
  static const std::uint64_t cap = [] {
    if (const char* env = std::getenv("UNCHAINED_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return static_cast<std::uint64_t>(200000);
  }();
  return cap;
}

} // namespace unchained

namespace unchained::par {

namespace {
std::atomic<Mode> g_mode{
#ifdef _OPENMP
    Mode::OpenMP
#else
    Mode::Serial
#endif
};
} // namespace

Mode mode() { return g_mode.load(std::memory_order_relaxed); }
void set_mode(Mode m) { g_mode.store(m, std::memory_order_relaxed); }

bool openmp_compiled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<std::uint64_t>
filter_indices_serial(std::uint64_t n, const std::function<bool(std::uint64_t)>& pred) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < n; ++i)
    if (pred(i)) out.push_back(i);
  return out;
}

std::vector<std::uint64_t> filter_indices(std::uint64_t n,
                                          const std::function<bool(std::uint64_t)>& pred) {
#ifdef _OPENMP
  if (mode() == Mode::OpenMP && n > 1024) {
    const int nthreads = omp_get_max_threads();
    std::vector<std::vector<std::uint64_t>> blocks(static_cast<std::size_t>(nthreads));
#pragma omp parallel num_threads(nthreads)
    {
      const int t = omp_get_thread_num();
      const std::uint64_t lo = n * static_cast<std::uint64_t>(t) / nthreads;
      const std::uint64_t hi = n * (static_cast<std::uint64_t>(t) + 1) / nthreads;
      auto& mine = blocks[static_cast<std::size_t>(t)];
      for (std::uint64_t i = lo; i < hi; ++i)
        if (pred(i)) mine.push_back(i);
    }
    std::vector<std::uint64_t> out;
    for (auto& b : blocks) out.insert(out.end(), b.begin(), b.end());
    return out;
  }
#endif
  return filter_indices_serial(n, pred);
}

void parallel_for(std::uint64_t n, const std::function<void(std::uint64_t)>& body) {
#ifdef _OPENMP
  if (mode() == Mode::OpenMP && n > 1) {
    const auto sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < sn; ++i) body(static_cast<std::uint64_t>(i));
    return;
  }
#endif
  for (std::uint64_t i = 0; i < n; ++i) body(i);
}

} // namespace unchained::par
