#include "tt/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace tt::parallel {

namespace {
std::atomic<int> g_threads{0};

int effective_threads() {
    int n = g_threads.load(std::memory_order_relaxed);
    if (n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}
}  // namespace

void set_num_threads(int n) { g_threads.store(n < 0 ? 0 : n, std::memory_order_relaxed); }

int num_threads() { return effective_threads(); }

void for_range(Index n, const std::function<void(Index, Index)>& fn) {
    if (n <= 0) return;
    int t = effective_threads();
    if (t <= 1 || n == 1) {
        fn(0, n);
        return;
    }
    Index blocks = std::min<Index>(t, n);
    Index per = (n + blocks - 1) / blocks;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(blocks));
    for (Index bidx = 0; bidx < blocks; ++bidx) {
        Index lo = bidx * per;
        Index hi = std::min(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

}  // namespace tt::parallel
