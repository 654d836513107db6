#include "shnls/threads.hpp"

#include <cstdlib>
#include <string>

#include <omp.h>

#include "spectral_plans.hpp"

namespace shnls {

void set_thread_count(int count) {
    if (count < 1) count = omp_get_num_procs();
    omp_set_num_threads(count);
    spectral::detail::PlanCache::instance().set_threads(count);
}

int configure_threads_from_env() {
    if (const char* env = std::getenv("SHNLS_THREADS"); env != nullptr && *env != '\0') {
        try {
            set_thread_count(std::stoi(env));
        } catch (const std::exception&) {
            set_thread_count(0);
        }
    }
    return thread_count();
}

int thread_count() { return omp_get_max_threads(); }

}  // namespace shnls
