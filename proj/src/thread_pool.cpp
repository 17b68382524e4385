#include "rgg/thread_pool.hpp"

#include <algorithm>

namespace rgg {

ThreadPool::ThreadPool(int threads) {
    int n = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    n = std::max(1, n);
    for (int i = 0; i < n - 1; ++i) {
        workers_.emplace_back([this] { worker_loop(); });
    }
}

ThreadPool::~ThreadPool() {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        stop_ = true;
    }
    wake_.notify_all();
    for (std::thread& t : workers_) t.join();
}

void ThreadPool::worker_loop() {
    std::uint64_t seen = 0;
    while (true) {
        const std::function<void(int, int)>* job = nullptr;
        int n = 0, chunks = 0;
        {
            std::unique_lock<std::mutex> lock(mutex_);
            wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
            if (stop_) return;
            seen = generation_;
            job = job_;
            n = job_n_;
            chunks = job_chunks_;
        }
        while (true) {
            int chunk;
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (next_chunk_ >= chunks) break;
                chunk = next_chunk_++;
            }
            const int begin = static_cast<int>(static_cast<long long>(n) * chunk / chunks);
            const int end = static_cast<int>(static_cast<long long>(n) * (chunk + 1) / chunks);
            (*job)(begin, end);
            {
                std::lock_guard<std::mutex> lock(mutex_);
                if (--pending_ == 0) done_.notify_one();
            }
        }
    }
}

void ThreadPool::parallel_for(int n, const std::function<void(int, int)>& fn) {
    if (n <= 0) return;
    const int workers = thread_count();
    if (workers == 1 || n < 256) {
        fn(0, n);
        return;
    }
    const int chunks = workers * 2;
    {
        std::lock_guard<std::mutex> lock(mutex_);
        job_ = &fn;
        job_n_ = n;
        job_chunks_ = chunks;
        next_chunk_ = 0;
        pending_ = chunks;
        ++generation_;
    }
    wake_.notify_all();
    while (true) {
        int chunk;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            if (next_chunk_ >= chunks) break;
            chunk = next_chunk_++;
        }
        const int begin = static_cast<int>(static_cast<long long>(n) * chunk / chunks);
        const int end = static_cast<int>(static_cast<long long>(n) * (chunk + 1) / chunks);
        fn(begin, end);
        {
            std::lock_guard<std::mutex> lock(mutex_);
            --pending_;
        }
    }
    std::unique_lock<std::mutex> lock(mutex_);
    done_.wait(lock, [&] { return pending_ == 0; });
}

} // namespace rgg
