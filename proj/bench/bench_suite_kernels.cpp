#include "oodeval/dist_model.hpp"
#include "oodeval/gscore.hpp"
#include "oodeval/suite_kernels.hpp"
#include "oodeval/synth.hpp"

#include <benchmark/benchmark.h>

using namespace oodeval;

namespace {

struct Fixture {
    SuiteSpec spec;
    SplitSpecs plan;
    MetaSuite suite;
    std::optional<GaussianParams> val;
};

const Fixture& fixture()
{
    static const Fixture f = [] {
        Fixture x;
        x.spec.n_test = 0;
        x.plan = plan_suite(x.spec);
        x.suite = gen_suite(x.spec).train;
        x.val = fit_val_gaussian(gen_validation(x.spec));
        return x;
    }();
    return f;
}

Execution mode(const benchmark::State& state)
{
    return state.range(0) == 0 ? Execution::Serial : Execution::Parallel;
}

void BM_GenerateSets(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(generate_sets(f.plan.train, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.plan.train.size()));
}

void BM_SuiteGscores(benchmark::State& state)
{
    const auto& f = fixture();
    GscoreConfig cfg;
    cfg.method = static_cast<FitMethod>(state.range(1));
    cfg.distance = cfg.method == FitMethod::Kmeans ? Distance::L2 : Distance::Wasserstein;
    for (auto _ : state)
        benchmark::DoNotOptimize(suite_gscores(f.suite, f.val, cfg, mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.suite.size()));
}

void BM_SuiteTruths(benchmark::State& state)
{
    const auto& f = fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(suite_truths(f.suite, TargetMetric::fpr_at_tpr(0.95), mode(state)));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(f.suite.size()));
}

} // namespace

// Arg 0: 0 = serial, 1 = OpenMP.
BENCHMARK(BM_GenerateSets)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteGscores)
    ->ArgsProduct({{0, 1},
                   {static_cast<int>(FitMethod::Ude), static_cast<int>(FitMethod::Gmm),
                    static_cast<int>(FitMethod::Kmeans)}})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SuiteTruths)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
