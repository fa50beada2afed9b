#include <benchmark/benchmark.h>

#include <gbethe/action.hpp>
#include <gbethe/sampling.hpp>

using namespace gbethe;

namespace {

SpinChainModel<Rational> bench_model(int len)
{
    GradingProfile<Rational> gp;
    gp.m = 2;
    gp.n = 1;
    gp.c = 1;
    std::vector<Rational> zs;
    for (int k = 0; k < len; ++k)
        zs.emplace_back(2 * k + 1, 3);
    return SpinChainModel<Rational>(gp, len, std::move(zs), {2, 3, 5});
}

RationalSampler bench_sampler(const SpinChainModel<Rational>& model, unsigned long seed)
{
    RationalSampler sampler(seed, model.grading.c);
    for (const Rational& z : model.inhomogeneities)
        sampler.note(z);
    return sampler;
}

void bm_determinant_coupler(benchmark::State& state)
{
    const int size = static_cast<int>(state.range(0));
    GradingProfile<Rational> gp;
    gp.m = 1;
    gp.n = 1;
    gp.c = 1;
    RationalSampler sampler(77, gp.c);
    ParameterSet<Rational> xs = sampler.draw_set(size);
    ParameterSet<Rational> ys = sampler.draw_set(size);
    for (auto _ : state)
        benchmark::DoNotOptimize(izergin(gp, 0, ys, xs));
}

void bm_vector_build(benchmark::State& state)
{
    auto model = bench_model(2);
    auto sampler = bench_sampler(model, 78);
    ParamTable<Rational> t = {sampler.draw_set(static_cast<int>(state.range(0))),
                              sampler.draw_set(static_cast<int>(state.range(1)))};
    for (auto _ : state)
        benchmark::DoNotOptimize(build_bethe_vector(model, t));
}

void bm_entry_action(benchmark::State& state)
{
    auto model = bench_model(2);
    auto sampler = bench_sampler(model, 79);
    ParamTable<Rational> t = {sampler.draw_set(1), sampler.draw_set(1)};
    Rational z = sampler.draw();
    for (auto _ : state)
        benchmark::DoNotOptimize(action_formula(model, 1, 3, z, t));
}

BENCHMARK(bm_determinant_coupler)->DenseRange(1, 6);
BENCHMARK(bm_vector_build)->Args({1, 1})->Args({2, 1})->Args({2, 2});
BENCHMARK(bm_entry_action);

} // namespace

BENCHMARK_MAIN();
