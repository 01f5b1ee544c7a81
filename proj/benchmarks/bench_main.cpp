#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "ulnse/divfree.hpp"
#include "ulnse/littlewood.hpp"
#include "ulnse/operators.hpp"
#include "ulnse/pressure.hpp"
#include "ulnse/solver.hpp"
#include "ulnse/spectral.hpp"
#include "ulnse/weights.hpp"

using namespace ulnse;

namespace {

constexpr double pi = std::numbers::pi;

VectorField swirl(const Grid& g) {
    const ScalarField psi = ScalarField::from_function(g, [](Vec2 x) {
        return 8.0 * std::exp(-x.norm2() / 16.0) + std::sin(0.25 * x.x) * std::cos(0.5 * x.y);
    });
    return perp_gradient(psi);
}

void BM_forward_inverse(benchmark::State& st) {
    const Grid g(static_cast<int>(st.range(0)), 2.0 * pi);
    const ScalarField f = ScalarField::from_function(g, [](Vec2 x) { return std::sin(3.0 * x.x) * std::cos(x.y); });
    for (auto _ : st) benchmark::DoNotOptimize(inverse(forward(f)));
}
BENCHMARK(BM_forward_inverse)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_solver_step(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    SolverConfig cfg;
    cfg.grid = Grid(n, 32.0 * pi);
    cfg.dt = 0.01;
    cfg.t_end = 1.0;
    const Solver solver(cfg);
    SolverState s = init_state(swirl(cfg.grid));
    for (auto _ : st) solver.advance(s);
}
BENCHMARK(BM_solver_step)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_ul_norm(benchmark::State& st) {
    const Grid g(256, 32.0 * pi);
    const VectorField u = swirl(g);
    const double R = static_cast<double>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(ul_norm(u, 2.0, R));
}
BENCHMARK(BM_ul_norm)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_kernel_split(benchmark::State& st) {
    const Grid g(static_cast<int>(st.range(0)), 48.0);
    const VectorField u = VectorField::from_function(g, [](Vec2 x) {
        const double e = std::exp(-x.norm2() / 4.0) * (x.norm2() < 36.0 ? 1.0 : 0.0);
        return Vec2{-x.y * e, x.x * e};
    });
    const TensorField w = TensorField::outer(u);
    for (auto _ : st) benchmark::DoNotOptimize(grad_p_kernel_split(w, SplitSpec{4.0}));
}
BENCHMARK(BM_kernel_split)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_lemma02(benchmark::State& st) {
    const Grid g(256, 32.0 * pi);
    const VectorField u = swirl(g);
    const TensorField w = TensorField::outer(u);
    for (auto _ : st) benchmark::DoNotOptimize(lemma02_bound(w, u, 8.0, {3.0, -2.0}, 1.5, 3.0));
}
BENCHMARK(BM_lemma02)->Unit(benchmark::kMillisecond);

void BM_truncate_divfree(benchmark::State& st) {
    const Grid g(256, 64.0);
    const VectorField u = swirl(g);
    for (auto _ : st) benchmark::DoNotOptimize(truncate_divfree(u, 8.0));
}
BENCHMARK(BM_truncate_divfree)->Unit(benchmark::kMillisecond);

void BM_besov_norm(benchmark::State& st) {
    const Grid g(256, 2.0 * pi);
    const ScalarField f = curl(swirl(g));
    const DyadicSpec spec = DyadicSpec::for_grid(g);
    for (auto _ : st) benchmark::DoNotOptimize(besov_norm(f, 0.5, 2.0, 2.0, false, spec));
}
BENCHMARK(BM_besov_norm)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
