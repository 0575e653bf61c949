#ifndef LFUN_PARALLEL_HPP
#define LFUN_PARALLEL_HPP

#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

namespace lfun {

inline unsigned default_thread_count() {
    unsigned h = std::thread::hardware_concurrency();
    return h == 0 ? 1 : h;
}

// Applies f(i) for i in [0, n) on up to `threads` workers and returns the
// results in index order, so downstream reductions are independent of the
// thread count. If calls throw, the exception from the smallest index is
// rethrown (also scheduling-independent).
template <class F>
auto parallel_map(std::size_t n, unsigned threads, F&& f)
    -> std::vector<decltype(f(std::size_t{0}))> {
    using R = decltype(f(std::size_t{0}));
    std::vector<R> out;
    out.reserve(n);
    if (threads <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(f(i));
        return out;
    }

    std::vector<std::optional<R>> slots(n);
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i].emplace(f(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    std::size_t count = std::min<std::size_t>(threads, n);
    pool.reserve(count);
    for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (std::size_t i = 0; i < n; ++i)
        if (errors[i]) std::rethrow_exception(errors[i]);
    for (std::size_t i = 0; i < n; ++i) out.push_back(std::move(*slots[i]));
    return out;
}

} // namespace lfun

#endif
