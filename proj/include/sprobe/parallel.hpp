#pragma once

#include <cstddef>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sprobe::exec {

// Execution policy for the data-parallel kernels. Serial runs the exact same
// blocked code path single-threaded, so Serial and Parallel results are
// bitwise identical; only wall time differs. Work is split into fixed-size
// blocks independent of the thread count, so Parallel output does not depend
// on the number of workers either.
enum class Policy { Serial, Parallel };

Policy default_policy();
void set_default_policy(Policy p);

int max_threads();

// Runs fn(begin, end) over [0, total) in blocks of block_size.
template <typename Fn>
void for_blocks(std::size_t total, std::size_t block_size, Policy policy,
                Fn&& fn) {
  if (total == 0) return;
  if (block_size == 0) block_size = 1;
  const std::size_t nblocks = (total + block_size - 1) / block_size;
#ifdef _OPENMP
  if (policy == Policy::Parallel && nblocks > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
      const std::size_t lo = static_cast<std::size_t>(b) * block_size;
      const std::size_t hi = lo + block_size < total ? lo + block_size : total;
      fn(lo, hi);
    }
    return;
  }
#endif
  (void)policy;
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = b * block_size;
    const std::size_t hi = lo + block_size < total ? lo + block_size : total;
    fn(lo, hi);
  }
}

template <typename Fn>
void for_blocks(std::size_t total, std::size_t block_size, Fn&& fn) {
  for_blocks(total, block_size, default_policy(), fn);
}

}  // namespace sprobe::exec
