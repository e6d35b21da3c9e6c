#include "gridsched/thread_pool.hpp"

namespace gridsched {

ThreadPool::ThreadPool(std::size_t workers) {
    threads_.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i)
        threads_.emplace_back([this] { worker_loop(); });
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    work_cv_.notify_all();
    for (auto& t : threads_) t.join();
}

void ThreadPool::parallel_for(std::size_t count,
                              const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::unique_lock<std::mutex> lock(mutex_);
    batch_ = Batch{&fn, count, 0, 0};
    active_ = true;
    work_cv_.notify_all();
    while (run_one(lock)) {
    }
    done_cv_.wait(lock, [this] { return batch_.done == batch_.count; });
    active_ = false;
}

bool ThreadPool::run_one(std::unique_lock<std::mutex>& lock) {
    if (batch_.next >= batch_.count) return false;
    const std::size_t index = batch_.next++;
    lock.unlock();
    (*batch_.fn)(index);
    lock.lock();
    if (++batch_.done == batch_.count) done_cv_.notify_all();
    return true;
}

void ThreadPool::worker_loop() {
    std::unique_lock<std::mutex> lock(mutex_);
    while (true) {
        work_cv_.wait(lock, [this] {
            return stop_ || (active_ && batch_.next < batch_.count);
        });
        if (stop_) return;
        while (run_one(lock)) {
        }
    }
}

}  // namespace gridsched
