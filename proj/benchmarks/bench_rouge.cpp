#include "singpair/rouge.hpp"

#include "support/synthetic.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace {

std::vector<std::string> random_tokens(singpair::testing::TestRng& rng, int len, int vocab) {
    std::vector<std::string> out;
    out.reserve(len);
    for (int i = 0; i < len; ++i) out.push_back("tok" + std::to_string(rng.below(vocab)));
    return out;
}

void BM_RougeAverage(benchmark::State& state) {
    singpair::testing::TestRng rng(1);
    auto cand = random_tokens(rng, static_cast<int>(state.range(0)), 64);
    auto ref = random_tokens(rng, static_cast<int>(state.range(0)), 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(singpair::rouge_average(cand, ref));
}
BENCHMARK(BM_RougeAverage)->Arg(15)->Arg(30)->Arg(60);

void BM_RougeSu4(benchmark::State& state) {
    singpair::testing::TestRng rng(2);
    auto cand = random_tokens(rng, static_cast<int>(state.range(0)), 64);
    auto ref = random_tokens(rng, static_cast<int>(state.range(0)), 64);
    for (auto _ : state)
        benchmark::DoNotOptimize(singpair::rouge_su4(cand, ref));
}
BENCHMARK(BM_RougeSu4)->Arg(30)->Arg(100);

void BM_PorterStem(benchmark::State& state) {
    std::vector<std::string> words{"generalizations", "traditional", "hopefulness",
                                   "controlled",      "caresses",    "itemization"};
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(singpair::porter_stem(words[i]));
        i = (i + 1) % words.size();
    }
}
BENCHMARK(BM_PorterStem);

} // namespace
