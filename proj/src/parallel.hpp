#pragma once

#include <cstddef>
#include <functional>

namespace tc {

// Fixed-size pool for data-parallel loops.
class WorkerPool {
public:
    explicit WorkerPool(unsigned workers);
    ~WorkerPool();
    WorkerPool(const WorkerPool&) = delete;
    WorkerPool& operator=(const WorkerPool&) = delete;

    unsigned size() const { return workers_; }
    void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

private:
    unsigned workers_;
    struct Impl;
    Impl* impl_;
};

unsigned hardware_workers();

}  // namespace tc
