#pragma once

#include <cstddef>
#include <functional>

namespace mflab {

// Worker cap for internally parallel operations. 0 means hardware concurrency.
void set_thread_count(unsigned threads) noexcept;
unsigned thread_count() noexcept;

// Runs body(chunk_index) for every chunk in [0, chunks) across at most
// `threads` workers (0: thread_count()). Chunks are claimed dynamically, so
// body must only write to chunk-owned state; callers merge in chunk order.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body,
                     unsigned threads = 0);

} // namespace mflab
