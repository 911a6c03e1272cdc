#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace qtrank {

// Thrown when an enumeration would exceed the configured tuple budget.
// The CLI maps it to exit code 3; all other validation errors use
// std::invalid_argument and map to exit code 2.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// splitmix64: counter-based generator. Used for all seeded sampling so that
// draws depend only on (seed, counter), never on call order or partitioning.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d9eecf9208d0d5ULL;
    return x ^ (x >> 31);
}

// Uniform draw from [0, bound) via rejection, so every value is exactly
// equally likely. Consumes counters (seed, ctr), (seed, ctr+stride), ... and
// is reproducible regardless of how work is split.
inline uint64_t uniform_index(uint64_t seed, uint64_t ctr, uint64_t bound,
                              uint64_t stride = 0x100000001ULL) {
    uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
        uint64_t x = splitmix64(seed ^ splitmix64(ctr));
        if (x < limit) return x % bound;
        ctr += stride;
    }
}

int default_workers();  // QTRANK_WORKERS env var, else hardware_concurrency

// Splits [0, n) into `workers` contiguous ranges, runs `body(begin, end,
// part_index)` on each, on its own thread. Partial results must be merged by
// the caller in part_index order (every merge we use is commutative anyway,
// so totals are schedule independent).
void parallel_ranges(uint64_t n, int workers,
                     const std::function<void(uint64_t, uint64_t, int)>& body);

}  // namespace qtrank
