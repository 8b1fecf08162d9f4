#pragma once

#include <cstddef>
#include <span>

namespace spinor {

/// Worker count used by data-parallel loops. Defaults to the hardware
/// concurrency, capped by the SPINOR_THREADS environment variable.
int worker_count();
void set_worker_count(int n);

/// Pairwise (fixed-tree) sum; the tree depends only on the length, so the
/// result is identical from run to run regardless of the worker count.
double pairwise_sum(std::span<const double> v);

}  // namespace spinor
