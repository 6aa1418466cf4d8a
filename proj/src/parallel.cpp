#include "tcpkit/parallel.hpp"

#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace tcpkit {

int effective_threads() {
#ifdef _OPENMP
    int cap = omp_get_max_threads();
    if (const char* env = std::getenv("TCPKIT_THREADS")) {
        try {
            const int requested = std::stoi(env);
            if (requested >= 1 && requested < cap) cap = requested;
        } catch (...) {
            // unparsable value: ignore, keep runtime default
        }
    }
    return cap;
#else
    return 1;
#endif
}

void init_threads_from_env() {
#ifdef _OPENMP
    omp_set_num_threads(effective_threads());
#endif
}

} // namespace tcpkit
