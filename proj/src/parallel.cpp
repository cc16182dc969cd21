#include "rankfuse/parallel.hpp"

#include <cstdlib>

namespace rankfuse {

int default_thread_count() {
    if (const char* env = std::getenv("RANKFUSE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace rankfuse
