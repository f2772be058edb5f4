#pragma once

// Deterministic block-parallel driver. Work is split into numbered blocks;
// workers may compute blocks in any order, but results are consumed on the
// calling thread strictly in block order, so the outcome is identical for
// any thread count. consume() returning false cancels the remaining blocks.
// A block that throws has its exception rethrown on the calling thread.

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace gbftk {

template <typename BlockFn, typename ConsumeFn>
void ordered_blocks(std::uint64_t nblocks, unsigned threads, BlockFn&& block_fn,
                    ConsumeFn&& consume)
{
    using Result = std::invoke_result_t<BlockFn&, std::uint64_t>;

    if (threads <= 1 || nblocks <= 1) {
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            if (!consume(b, block_fn(b))) return;
        }
        return;
    }

    if (threads > nblocks) threads = static_cast<unsigned>(nblocks);

    struct Slot {
        std::optional<Result> value;
        std::exception_ptr error;
    };

    std::mutex mu;
    std::condition_variable cv;
    std::map<std::uint64_t, Slot> ready;
    std::atomic<std::uint64_t> next_block{0};
    std::atomic<std::uint64_t> consumed{0};
    std::atomic<bool> cancelled{false};
    const std::uint64_t lookahead = std::uint64_t(threads) * 4;

    auto worker = [&] {
        while (!cancelled.load(std::memory_order_relaxed)) {
            std::uint64_t b = next_block.fetch_add(1, std::memory_order_relaxed);
            if (b >= nblocks) return;
            // Bound the buffered results so a fast worker cannot run away.
            {
                std::unique_lock<std::mutex> lk(mu);
                cv.wait(lk, [&] {
                    return cancelled.load(std::memory_order_relaxed) ||
                           b < consumed.load(std::memory_order_relaxed) + lookahead;
                });
            }
            if (cancelled.load(std::memory_order_relaxed)) return;
            Slot slot;
            try {
                slot.value = block_fn(b);
            } catch (...) {
                slot.error = std::current_exception();
            }
            {
                std::lock_guard<std::mutex> lk(mu);
                ready.emplace(b, std::move(slot));
            }
            cv.notify_all();
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

    std::exception_ptr pending;
    {
        std::unique_lock<std::mutex> lk(mu);
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            cv.wait(lk, [&] { return ready.count(b) != 0; });
            Slot slot = std::move(ready.at(b));
            ready.erase(b);
            consumed.store(b + 1, std::memory_order_relaxed);
            if (slot.error) {
                pending = slot.error;
                cancelled.store(true, std::memory_order_relaxed);
                break;
            }
            lk.unlock();
            cv.notify_all();
            bool go_on = consume(b, std::move(*slot.value));
            lk.lock();
            if (!go_on) {
                cancelled.store(true, std::memory_order_relaxed);
                break;
            }
        }
        cancelled.store(true, std::memory_order_relaxed);
    }
    cv.notify_all();
    for (auto& th : pool) th.join();
    if (pending) std::rethrow_exception(pending);
}

}  // namespace gbftk
