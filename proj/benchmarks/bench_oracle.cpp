#include "singpair/oracle.hpp"

#include "support/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_DeriveGroundTruth(benchmark::State& state) {
    singpair::testing::SyntheticOptions options;
    options.records = static_cast<int>(state.range(0));
    options.seed = 3;
    auto records = singpair::testing::make_synthetic_corpus(options);
    const auto& stop = singpair::StopwordList::english();
    for (auto _ : state) {
        for (const auto& record : records)
            benchmark::DoNotOptimize(singpair::derive_all(record, stop));
    }
    state.SetItemsProcessed(state.iterations() * records.size());
}
BENCHMARK(BM_DeriveGroundTruth)->Arg(10)->Arg(50);

} // namespace
