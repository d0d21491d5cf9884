#include "parallel.hpp"

#include <tbb/blocked_range.h>
#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

#include <thread>

namespace tc {

struct WorkerPool::Impl {
    // Lets the arena use more threads than cores when asked to.
    tbb::global_control limit;
    tbb::task_arena arena;
    explicit Impl(unsigned n)
        : limit(tbb::global_control::max_allowed_parallelism, n), arena(static_cast<int>(n)) {}
};

WorkerPool::WorkerPool(unsigned workers) : workers_(workers ? workers : 1), impl_(new Impl(workers_)) {}

WorkerPool::~WorkerPool() { delete impl_; }

void WorkerPool::parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    impl_->arena.execute([&] {
        tbb::parallel_for(tbb::blocked_range<std::size_t>(0, n, 1), [&](const tbb::blocked_range<std::size_t>& r) {
            for (std::size_t i = r.begin(); i != r.end(); ++i) fn(i);
        });
    });
}

unsigned hardware_workers() {
    unsigned n = std::thread::hardware_concurrency();
    return n ? n : 1;
}

}  // namespace tc
