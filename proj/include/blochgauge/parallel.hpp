#pragma once

#include <cstddef>
#include <functional>

namespace blochgauge {

// Runs fn(i) for i in [0, count). Each work item writes only to caller-owned
// slots indexed by i, and any reduction happens after the join, so results do
// not depend on the worker count.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn);

unsigned default_workers();

} // namespace blochgauge
