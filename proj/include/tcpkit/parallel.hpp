#pragma once

namespace tcpkit {

// Applies the TCPKIT_THREADS cap (if set) to the OpenMP runtime. No-op in
// serial builds. Call once at process start.
void init_threads_from_env();

// Effective worker count: min(TCPKIT_THREADS, omp_get_max_threads()), or 1
// without OpenMP.
int effective_threads();

} // namespace tcpkit
