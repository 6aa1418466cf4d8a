// Times the OpenMP kernels against the serial reference implementation at
// sizes where the parallel cutover engages, and the subset sweep at desk
// scale. Run: bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "tcpkit/classify.hpp"
#include "tcpkit/generate.hpp"
#include "tcpkit/parallel.hpp"
#include "tcpkit/tensor.hpp"

using namespace tcpkit;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F> double time_ms(int repeats, F&& fn) {
    const double t0 = now_ms();
    for (int r = 0; r < repeats; ++r) fn();
    return (now_ms() - t0) / repeats;
}

void bench_case(const char* name, int order, int dim, int repeats) {
    GenSpec spec;
    spec.kind = GenKind::Nonnegative;
    spec.order = order;
    spec.dim = dim;
    spec.seed = 7;
    const Tensor a = generate(spec);
    Vec x(dim);
    for (int i = 0; i < dim; ++i) x[i] = 0.5 + 0.5 * (i % 3);

    volatile double sink = 0.0;
    const double t_ref = time_ms(repeats, [&] { sink = sink + ref::map_apply(a, x)[0]; });
    const double t_omp = time_ms(repeats, [&] { sink = sink + map_apply(a, x)[0]; });
    const double p_ref = time_ms(repeats, [&] { sink = sink + ref::poly_eval(a, x); });
    const double p_omp = time_ms(repeats, [&] { sink = sink + poly_eval(a, x); });

    std::printf("%-14s m=%d n=%-4d entries=%-9lld map %8.3f / %8.3f ms (x%.2f)   poly %8.3f / "
                "%8.3f ms (x%.2f)\n",
                name, order, dim, static_cast<long long>(a.size()), t_ref, t_omp,
                t_omp > 0 ? t_ref / t_omp : 0.0, p_ref, p_omp, p_omp > 0 ? p_ref / p_omp : 0.0);
}

} // namespace

int main(int argc, char** argv) {
    init_threads_from_env();
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 20;

    std::printf("threads: %d, repeats: %d (serial-reference / openmp, speedup)\n",
                effective_threads(), repeats);

    bench_case("matrix", 2, 512, repeats);
    bench_case("order-3", 3, 64, repeats);
    bench_case("order-4", 4, 24, repeats);
    bench_case("desk-scale", 3, 6, repeats);

    // classification sweep at desk scale: subsets and multistarts in parallel
    GenSpec spec;
    spec.kind = GenKind::DiagBoosted;
    spec.order = 3;
    spec.dim = 6;
    spec.params = {50.0};
    spec.seed = 11;
    const Tensor a = generate(spec);
    const double t_cls = time_ms(std::max(1, repeats / 10), [&] {
        (void)classify_strictly_semi_positive(a, SearchBudget{200000});
    });
    std::printf("classify strictly_semi_positive (m=3, n=6, boosted): %.1f ms\n", t_cls);
    return 0;
}
