// Minimal fixed-size worker pool with a blocking parallel_for. Workers are
// created once and reused across iterations, keeping per-iteration dispatch
// cheap enough for tight solver loops.

#ifndef GRIDSCHED_THREAD_POOL_HPP
#define GRIDSCHED_THREAD_POOL_HPP

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <queue>
#include <thread>
#include <vector>

namespace gridsched {

class ThreadPool {
public:
    explicit ThreadPool(std::size_t workers);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    std::size_t worker_count() const { return threads_.size(); }

    // Runs fn(i) for i in [0, count) across the pool and blocks until every
    // call finished. The caller thread participates, so a pool is usable
    // even with zero workers.
    void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

private:
    struct Batch {
        const std::function<void(std::size_t)>* fn = nullptr;
        std::size_t count = 0;
        std::size_t next = 0;
        std::size_t done = 0;
    };

    void worker_loop();
    bool run_one(std::unique_lock<std::mutex>& lock);

    std::mutex mutex_;
    std::condition_variable work_cv_;
    std::condition_variable done_cv_;
    Batch batch_;
    bool active_ = false;
    bool stop_ = false;
    std::vector<std::thread> threads_;
};

}  // namespace gridsched

#endif
