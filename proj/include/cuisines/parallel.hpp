#ifndef CUISINES_PARALLEL_HPP
#define CUISINES_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace cuisines {

// 0 means "use the hardware concurrency".
unsigned resolve_thread_count(unsigned requested);

// Runs body(0..count-1) across at most `threads` workers. Workers own
// disjoint indices, so results written per index are deterministic regardless
// of scheduling. The lowest-index exception, if any, is rethrown after all
// workers join.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace cuisines

#endif
