#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <thread>
#include <type_traits>
#include <vector>

namespace tcc {

/// Worker count used by the reductions below; 0 means hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Neumaier-compensated accumulator.
template <class T>
class CompensatedSum {
  public:
    void add(const T& x) {
        if constexpr (std::is_floating_point_v<T>) {
            add_real(sum_, comp_, x);
        } else {
            typename T::value_type s = sum_.real(), c = comp_.real();
            add_real(s, c, x.real());
            typename T::value_type si = sum_.imag(), ci = comp_.imag();
            add_real(si, ci, x.imag());
            sum_ = T(s, si);
            comp_ = T(c, ci);
        }
    }
    T value() const { return sum_ + comp_; }

  private:
    template <class R>
    static void add_real(R& sum, R& comp, R x) {
        const R t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    T sum_{};
    T comp_{};
};

/// Runs task(i) for i in [0, count) on the worker pool. If tasks throw, the
/// exception of the lowest failing index is rethrown after all workers finish.
template <class F>
void parallel_for(std::uint64_t count, F&& task) {
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::uint64_t> next{0};
    auto work = [&] {
        for (std::uint64_t i = next++; i < count; i = next++) {
            try {
                task(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(thread_count(), count));
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

/// Sums partial(lo, hi) over fixed blocks [k * block, (k+1) * block) of [0, total),
/// combining block results with a fixed pairwise tree. The result does not depend
/// on the number of worker threads.
template <class T, class F>
T deterministic_reduce(std::uint64_t total, std::uint64_t block, F&& partial) {
    if (total == 0) return T{};
    if (block == 0) block = 1;
    const std::uint64_t nblocks = (total + block - 1) / block;
    std::vector<T> results(nblocks);
    parallel_for(nblocks, [&](std::uint64_t b) {
        const std::uint64_t lo = b * block;
        const std::uint64_t hi = lo + block < total ? lo + block : total;
        results[b] = partial(lo, hi);
    });
    for (std::uint64_t stride = 1; stride < nblocks; stride *= 2) {
        for (std::uint64_t i = 0; i + stride < nblocks; i += 2 * stride) results[i] += results[i + stride];
    }
    return results[0];
}

}  // namespace tcc
