#include <benchmark/benchmark.h>

#include <random>

#include "symdisk/extend.hpp"
#include "symdisk/linalg.hpp"
#include "symdisk/numrange.hpp"
#include "symdisk/pick.hpp"
#include "symdisk/realization.hpp"
#include "symdisk/variety.hpp"

using namespace symdisk;

namespace {

ComplexMatrix random_contraction(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double re = g(rng);
            m(i, j) = Complex(re, g(rng));
        }
    return m * (0.95 / numerical_radius(m));
}

ComplexMatrix royal() {
    ComplexMatrix f(2, 2);
    f << 0.0, 2.0, 0.0, 0.0;
    return f;
}

}  // namespace

static void BM_NumericalRadius(benchmark::State& state) {
    const ComplexMatrix f = random_contraction(state.range(0), 1);
    for (auto _ : state) benchmark::DoNotOptimize(numerical_radius(f));
}
BENCHMARK(BM_NumericalRadius)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void BM_DefiningPoly(benchmark::State& state) {
    const PencilVariety v(random_contraction(state.range(0), 2));
    for (auto _ : state) benchmark::DoNotOptimize(defining_poly(v));
}
BENCHMARK(BM_DefiningPoly)->Arg(2)->Arg(4)->Arg(6);

static void BM_SpectralProjection(benchmark::State& state) {
    const ComplexMatrix f = royal();
    const ComplexMatrix a = f + 0.01 * f.adjoint();
    for (auto _ : state) benchmark::DoNotOptimize(spectral_projection(a, 0.2, 0.05, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_SpectralProjection)->Arg(64)->Arg(256);

static void BM_RegionAudit(benchmark::State& state) {
    const PencilVariety v(random_contraction(4, 3));
    const auto grid = default_p_grid();
    for (auto _ : state) benchmark::DoNotOptimize(region_audit(v, grid));
}
BENCHMARK(BM_RegionAudit)->Unit(benchmark::kMillisecond);

static void BM_ExtensionPipeline(benchmark::State& state) {
    const std::vector<GammaPoint> nodes{{0.0, 0.0}, {1.0, 0.25}};
    const std::vector<Complex> targets{0.0, -0.5};
    const ExtensionModel model = model_from_matrix(royal());
    for (auto _ : state) {
        const KernelMatrix k = KernelMatrix::from_kernel(nodes, model_kernel(model));
        const PsdReport psd = psd_report(pick_matrix(k, targets));
        const ExtensionModel m = build_extension(k);
        benchmark::DoNotOptimize(unique_value(m, k, *psd.null_vector, targets, {1.2, 0.36}));
    }
}
BENCHMARK(BM_ExtensionPipeline)->Unit(benchmark::kMicrosecond);

static void BM_BoundaryAudit(benchmark::State& state) {
    const RealizationModel m{ComplexMatrix::Ones(1, 1), ComplexMatrix::Zero(1, 1), ComplexMatrix::Ones(1, 1),
                             ComplexMatrix::Ones(1, 1), ComplexMatrix::Zero(1, 1)};
    for (auto _ : state) benchmark::DoNotOptimize(boundary_unitarity_audit(m, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_BoundaryAudit)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
