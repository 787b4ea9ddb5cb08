#include "cohomotopy/parallel.hpp"

#include <atomic>

namespace cohomotopy {

namespace {
std::atomic<unsigned> g_threads{std::max(1U, std::thread::hardware_concurrency())};
}

void set_thread_count(unsigned n)
{
    g_threads.store(std::max(1U, n));
}

unsigned thread_count()
{
    return g_threads.load();
}

}  // namespace cohomotopy
