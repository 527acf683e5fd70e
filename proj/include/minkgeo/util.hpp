#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace minkgeo {

inline constexpr double kEpsNum = 1e-9;    // algebraic identities
inline constexpr double kEpsRoot = 1e-12;  // bisection interval width

// Static-partition parallel reduce over [0, n). Each chunk folds into its own
// Local; chunk results are merged in index order afterwards, so the outcome is
// independent of the number of threads. per_index must be pure.
template <class Local, class PerIndex, class Merge>
Local parallel_reduce(std::int64_t n, int threads, Local init, PerIndex per_index, Merge merge) {
  if (threads < 1) threads = 1;
  if (threads == 1 || n < 2) {
    Local acc = init;
    for (std::int64_t i = 0; i < n; ++i) per_index(acc, i);
    return acc;
  }
  int chunks = threads;
  if (static_cast<std::int64_t>(chunks) > n) chunks = static_cast<int>(n);
  std::vector<Local> locals(chunks, init);
  std::vector<std::exception_ptr> errors(chunks);
  std::vector<std::thread> pool;
  pool.reserve(chunks);
  std::int64_t per = (n + chunks - 1) / chunks;
  for (int c = 0; c < chunks; ++c) {
    std::int64_t lo = c * per;
    std::int64_t hi = std::min(n, lo + per);
    pool.emplace_back([&, c, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) per_index(locals[c], i);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int c = 0; c < chunks; ++c)
    if (errors[c]) std::rethrow_exception(errors[c]);
  Local acc = init;
  for (int c = 0; c < chunks; ++c) merge(acc, locals[c]);
  return acc;
}

}  // namespace minkgeo
