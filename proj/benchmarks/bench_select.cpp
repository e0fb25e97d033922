#include "singpair/pipeline.hpp"
#include "singpair/select.hpp"
#include "singpair/vsm.hpp"

#include "support/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_MmrSelect(benchmark::State& state) {
    singpair::testing::SyntheticOptions options;
    options.records = 1;
    options.min_sentences = static_cast<int>(state.range(0));
    options.max_sentences = static_cast<int>(state.range(0));
    options.seed = 9;
    auto records = singpair::testing::make_synthetic_corpus(options);
    const auto& stop = singpair::StopwordList::english();

    auto profile = singpair::dataset_profile("cnndm");
    profile.max_candidate_sentences = static_cast<int>(state.range(0));
    auto idf = singpair::fit_idf(records, stop);
    auto pool = singpair::candidate_pool(records[0], profile);
    auto candidates = singpair::enumerate_candidates(pool);

    singpair::testing::TestRng rng(11);
    std::map<std::string, double> scores;
    for (const auto& c : candidates) scores[c.id()] = rng.uniform();
    auto normalized = singpair::normalize_scores(scores);

    singpair::SelectionConfig config;
    config.budget_instances = 4;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            singpair::mmr_select(candidates, normalized, pool, idf, stop, config));
    }
    state.SetLabel(std::to_string(candidates.size()) + " candidates");
}
BENCHMARK(BM_MmrSelect)->Arg(15)->Arg(30);

} // namespace
