#include "rankstab/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace rankstab {

namespace {
std::atomic<int> configured{0};
}

int thread_count() {
    if (const int t = configured.load(); t > 0) return t;
    if (const char* env = std::getenv("RANKSTAB_THREADS")) {
        try {
            const int t = std::stoi(env);
            if (t > 0) return t;
        } catch (const std::exception&) {
        }
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_thread_count(int threads) { configured.store(threads > 0 ? threads : 0); }

}  // namespace rankstab
