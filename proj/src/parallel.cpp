#include "spinor/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace spinor {
namespace {

int initial_worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("SPINOR_THREADS")) {
        try {
            const int cap = std::stoi(env);
            if (cap > 0) n = std::min(n, cap);
        } catch (...) {
            // unparsable value: keep the hardware default
        }
    }
    return n;
}

std::atomic<int>& workers() {
    static std::atomic<int> n{initial_worker_count()};
    return n;
}

}  // namespace

int worker_count() { return workers().load(std::memory_order_relaxed); }

void set_worker_count(int n) { workers().store(std::max(1, n), std::memory_order_relaxed); }

double pairwise_sum(std::span<const double> v) {
    constexpr std::size_t leaf = 64;
    if (v.size() <= leaf) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace spinor
