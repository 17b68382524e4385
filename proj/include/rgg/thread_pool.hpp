#pragma once

#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace rgg {

/// Persistent worker pool for data-parallel index ranges. Work items write
/// to disjoint output slots, so scheduling order never affects results.
class ThreadPool {
public:
    explicit ThreadPool(int threads = 0);
    ~ThreadPool();

    ThreadPool(const ThreadPool&) = delete;
    ThreadPool& operator=(const ThreadPool&) = delete;

    int thread_count() const { return static_cast<int>(workers_.size()) + 1; }

    /// Runs fn(begin, end) over [0, n) split into roughly equal chunks; the
    /// calling thread takes the first chunk. Blocks until all chunks finish.
    void parallel_for(int n, const std::function<void(int, int)>& fn);

private:
    void worker_loop();

    std::vector<std::thread> workers_;
    std::mutex mutex_;
    std::condition_variable wake_;
    std::condition_variable done_;

    const std::function<void(int, int)>* job_ = nullptr;
    int job_n_ = 0;
    int job_chunks_ = 0;
    int next_chunk_ = 0;
    int pending_ = 0;
    std::uint64_t generation_ = 0;
    bool stop_ = false;
};

} // namespace rgg
