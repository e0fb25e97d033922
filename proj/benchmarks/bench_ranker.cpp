#include "singpair/ranker.hpp"

#include "support/synthetic.hpp"

#include <benchmark/benchmark.h>

namespace {

singpair::RankingDataset make_dataset(int queries, int items, int width) {
    singpair::testing::TestRng rng(7);
    singpair::RankingDataset dataset;
    dataset.feature_width = width;
    for (int q = 0; q < queries; ++q) {
        singpair::RankingQuery query;
        query.query_id = "q" + std::to_string(q);
        for (int i = 0; i < items; ++i) {
            std::vector<double> x(width);
            for (auto& v : x) v = rng.uniform();
            bool positive = i < 3;
            x[0] = positive ? 0.7 + 0.3 * rng.uniform() : 0.4 * rng.uniform();
            query.features.push_back(std::move(x));
            query.labels.push_back(positive ? 1 : 0);
        }
        dataset.queries.push_back(std::move(query));
    }
    return dataset;
}

void BM_TrainLambdaMart(benchmark::State& state) {
    auto dataset = make_dataset(static_cast<int>(state.range(0)), 30, 27);
    singpair::TrainConfig config;
    config.num_trees = static_cast<int>(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(singpair::train_lambdamart(dataset, config));
}
BENCHMARK(BM_TrainLambdaMart)->Args({20, 20})->Args({50, 50});

void BM_Predict(benchmark::State& state) {
    auto dataset = make_dataset(20, 30, 27);
    singpair::TrainConfig config;
    config.num_trees = 100;
    auto model = singpair::train_lambdamart(dataset, config);
    for (auto _ : state) {
        for (const auto& query : dataset.queries)
            benchmark::DoNotOptimize(singpair::predict_scores(model, query.features));
    }
    state.SetItemsProcessed(state.iterations() * 20 * 30);
}
BENCHMARK(BM_Predict);

} // namespace
