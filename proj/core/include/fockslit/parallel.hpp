#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace fockslit {

// Worker threads used by parallel_for / parallel_reduce. Results are
// bit-identical for any setting: element tasks are independent and
// reductions run over fixed-size blocks combined in index order.
void set_thread_count(int n);
int thread_count();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Sum body(i) for i in [0, n). Per-block partial sums (block size fixed,
// independent of thread count) are accumulated serially in index order and
// combined in block order.
std::complex<double> parallel_reduce(std::size_t n,
                                     const std::function<std::complex<double>(std::size_t)>& body);

}  // namespace fockslit
