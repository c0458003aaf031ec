// SPDX-License-Identifier: Apache-2.0
//
// Replica-parallel map with results stored by replica index, so output never
// depends on the thread count or scheduling.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace hmc {

inline unsigned default_threads()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// out[r] = fn(r) for r in [0, count), evaluated on up to `threads` workers.
template <class Fn>
auto map_replicas(std::size_t count, unsigned threads, Fn&& fn)
{
    using Result = decltype(fn(std::size_t{0}));
    std::vector<Result> out(count);
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t r = 0; r < count; ++r) {
            out[r] = fn(r);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> workers;
    workers.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        workers.emplace_back([&] {
            try {
                for (std::size_t r = next++; r < count; r = next++) {
                    out[r] = fn(r);
                }
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return out;
}

}  // namespace hmc
