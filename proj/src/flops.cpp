#include "tt/flops.hpp"

#include <atomic>

namespace tt::flops {

namespace {
std::atomic<std::uint64_t> g_count{0};
}

void reset() { g_count.store(0, std::memory_order_relaxed); }

void add(std::uint64_t multiply_adds) { g_count.fetch_add(multiply_adds, std::memory_order_relaxed); }

std::uint64_t count() { return g_count.load(std::memory_order_relaxed); }

}  // namespace tt::flops
