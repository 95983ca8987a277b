#ifndef UAVDEPLOY_PARALLEL_HPP
#define UAVDEPLOY_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <thread>
#include <vector>

namespace uavdeploy {

using Rng = std::mt19937_64;

// Realizations are processed in fixed-size blocks; block b always draws from
// substream (seed, b), so the sample path never depends on the worker count.
inline constexpr std::uint64_t kBlockSize = 1 << 14;

inline Rng make_substream(std::uint64_t seed, std::uint64_t stream)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                      0x75617664u};
    return Rng(seq);
}

inline unsigned resolve_threads(unsigned requested)
{
    if (requested > 0) return requested;
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Runs `work(rng, count)` for each block of `n_items` and folds the per-block
 * accumulators with `Acc::merge` in block order. The fold order is fixed, so
 * floating-point results are identical for any thread count.
 */
template <typename Acc, typename Work>
Acc run_blocks(std::uint64_t n_items, std::uint64_t seed, unsigned threads, Work work)
{
    const std::uint64_t n_blocks = (n_items + kBlockSize - 1) / kBlockSize;
    std::vector<Acc> partial(n_blocks);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            for (std::uint64_t b = next++; b < n_blocks; b = next++) {
                Rng rng = make_substream(seed, b);
                const std::uint64_t count = std::min(kBlockSize, n_items - b * kBlockSize);
                partial[b] = work(rng, count);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = n_blocks;
        }
    };

    const unsigned n_threads =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_blocks, 1)));
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    Acc total{};
    for (const Acc& p : partial) total.merge(p);
    return total;
}

/// Count / sum / sum-of-squares triple; merge is associative.
struct Moments {
    std::uint64_t n = 0;
    double sum = 0.0;
    double sum_sq = 0.0;

    void add(double v)
    {
        ++n;
        sum += v;
        sum_sq += v * v;
    }
    void merge(const Moments& o)
    {
        n += o.n;
        sum += o.sum;
        sum_sq += o.sum_sq;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double sample_variance() const
    {
        if (n < 2) return 0.0;
        const double nd = static_cast<double>(n);
        const double m = sum / nd;
        return std::max(0.0, (sum_sq - nd * m * m) / (nd - 1.0));
    }
    double std_error() const
    {
        return n ? std::sqrt(sample_variance() / static_cast<double>(n)) : 0.0;
    }
};

}  // namespace uavdeploy

#endif
