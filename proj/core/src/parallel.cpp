#include "fockslit/parallel.hpp"

#include <atomic>
#include <thread>
#include <vector>

namespace fockslit {

namespace {
std::atomic<int> g_threads{1};
constexpr std::size_t kReduceBlock = 1024;
}

void set_thread_count(int n) { g_threads.store(n < 1 ? 1 : n); }
int thread_count() { return g_threads.load(); }

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const int nt = thread_count();
    if (nt <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            body(i);
        }
    };
    std::vector<std::thread> pool;
    std::size_t use = std::min<std::size_t>(nt, n);
    pool.reserve(use - 1);
    for (std::size_t t = 1; t < use; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
}

std::complex<double> parallel_reduce(std::size_t n,
                                     const std::function<std::complex<double>(std::size_t)>& body) {
    const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
    std::vector<std::complex<double>> partial(blocks, std::complex<double>(0.0, 0.0));
    parallel_for(blocks, [&](std::size_t b) {
        std::complex<double> acc(0.0, 0.0);
        const std::size_t lo = b * kReduceBlock;
        const std::size_t hi = std::min(n, lo + kReduceBlock);
        for (std::size_t i = lo; i < hi; ++i) acc += body(i);
        partial[b] = acc;
    });
    std::complex<double> total(0.0, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) total += partial[b];
    return total;
}

}  // namespace fockslit
