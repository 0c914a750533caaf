#pragma once

#include <omp.h>

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace pirmax {

/// Execution policy for the exhaustive audit kernels. kSerial is the
/// reference; kParallel must produce identical results and witnesses.
enum class Exec { kSerial, kParallel };

/// Smallest i in [0, count) with pred(i) true, or nullopt.
template <class Pred>
std::optional<std::size_t> find_first(std::size_t count, Exec exec, Pred&& pred) {
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < count; ++i) {
      if (pred(i)) return i;
    }
    return std::nullopt;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t best = kNone;
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) {
    std::size_t seen;
#pragma omp atomic read
    seen = best;
    if (static_cast<std::size_t>(i) > seen) continue;
    if (pred(static_cast<std::size_t>(i))) {
#pragma omp critical(pirmax_find_first)
      if (static_cast<std::size_t>(i) < best) best = static_cast<std::size_t>(i);
    }
  }
  if (best == kNone) return std::nullopt;
  return best;
}

/// out[i] = fn(i) for i in [0, count); results merged in index order.
template <class T, class Fn>
std::vector<T> map_indices(std::size_t count, Exec exec, Fn&& fn) {
  std::vector<T> out(count);
  if (exec == Exec::kSerial) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  const auto n = static_cast<std::int64_t>(count);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
  return out;
}

}  // namespace pirmax
