#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "puc/rng.hpp"

namespace puc::detail {

/// Work is cut into fixed-size shards, each driven by the substream whose id
/// is the shard index. The shard layout depends only on the item count, so
/// the produced multiset (and with fixed write slots, the exact output) is
/// identical for any worker count, including one.
inline constexpr std::size_t kShardSize = 65536;

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PUC_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

/// fn(shard_index, begin, end, stream) over [0, count).
template <typename Fn>
void run_sharded(std::size_t count, std::uint64_t seed, unsigned threads, Fn&& fn) {
    if (count == 0) return;
    const std::size_t shards = (count + kShardSize - 1) / kShardSize;
    auto run_shard = [&](std::size_t s) {
        const std::size_t begin = s * kShardSize;
        const std::size_t end = std::min(begin + kShardSize, count);
        RandomStream rs(seed, s);
        fn(s, begin, end, rs);
    };

    unsigned workers = resolve_threads(threads);
    if (workers > shards) workers = static_cast<unsigned>(shards);
    if (workers <= 1) {
        for (std::size_t s = 0; s < shards; ++s) run_shard(s);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t s = next.fetch_add(1);
                if (s >= shards) return;
                try {
                    run_shard(s);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace puc::detail
