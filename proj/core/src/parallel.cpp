#include "ulnse/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ulnse {

int configure_threads() {
    if (const char* env = std::getenv("UL_NSE_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) throw std::invalid_argument(std::string("UL_NSE_THREADS must be a positive integer, got ") + env);
        omp_set_num_threads(static_cast<int>(v));
    }
    return omp_get_max_threads();
}

int max_threads() { return omp_get_max_threads(); }

}  // namespace ulnse
