#pragma once

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace corrkit {

/// Caps worker threads used by chunked_reduce. 0 restores the default
/// (hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Splits [0, n) into fixed-size chunks, evaluates chunk_fn(begin, end)
/// on each (possibly concurrently) and folds the partial results with
/// combine in chunk order. The chunking does not depend on the thread
/// count, so the result is identical for any number of workers.
template <class T, class ChunkFn, class Combine>
T chunked_reduce(std::size_t n, ChunkFn&& chunk_fn, T init, Combine&& combine,
                 std::size_t chunk = 1024) {
    const std::size_t num_chunks = (n + chunk - 1) / chunk;
    std::vector<T> partial(num_chunks);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(max_threads(), num_chunks));
    auto run_chunk = [&](std::size_t c) {
        const std::size_t begin = c * chunk;
        partial[c] = chunk_fn(begin, std::min(n, begin + chunk));
    };
    if (workers <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mutex;
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t c = next++; c < num_chunks; c = next++) {
                    try {
                        run_chunk(c);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }
    T acc = std::move(init);
    for (auto& p : partial) acc = combine(std::move(acc), std::move(p));
    return acc;
}

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace corrkit
