#include <qtrank/util.hpp>

#include <cstdlib>

namespace qtrank {

int default_workers() {
    if (const char* env = std::getenv("QTRANK_WORKERS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void parallel_ranges(uint64_t n, int workers,
                     const std::function<void(uint64_t, uint64_t, int)>& body) {
    if (workers < 1) throw std::invalid_argument("parallel_ranges: workers must be >= 1");
    uint64_t w = static_cast<uint64_t>(workers);
    if (w > n) w = n ? n : 1;
    if (w == 1) {
        body(0, n, 0);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(w);
    uint64_t chunk = n / w, extra = n % w, begin = 0;
    for (uint64_t i = 0; i < w; ++i) {
        uint64_t end = begin + chunk + (i < extra ? 1 : 0);
        threads.emplace_back(body, begin, end, static_cast<int>(i));
        begin = end;
    }
    for (auto& t : threads) t.join();
}

}  // namespace qtrank
