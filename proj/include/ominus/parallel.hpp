#ifndef OMINUS_PARALLEL_HPP
#define OMINUS_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ominus {

/// Splits [0, n) into `workers` contiguous chunks and calls body(begin, end, chunk)
/// for each, on separate threads when workers > 1. Chunk boundaries depend only
/// on n and workers, so callers that merge per-chunk results in chunk order get
/// schedule-independent output.
template <class Body>
void parallel_chunks(std::size_t n, unsigned workers, Body&& body) {
    workers = std::max(1u, workers);
    if (workers == 1 || n < 2) {
        body(std::size_t{0}, n, 0u);
        return;
    }
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t step = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(n, w * step);
        const std::size_t end = std::min(n, begin + step);
        pool.emplace_back([&, begin, end, w] {
            try {
                body(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace ominus

#endif
