#pragma once

#include "singpair/types.hpp"

#include <cstdint>
#include <vector>

namespace singpair::testing {

// News-like corpus with a controlled fusion profile. Each document carries
// per-sentence unique vocabulary plus shared theme words concentrated in the
// first five sentences; summary sentences copy contiguous spans from one,
// two or three of those sentences (or from nowhere, for noise), so the
// expected ground-truth structure of every summary sentence is known by
// construction.
struct SyntheticOptions {
    int records = 50;
    int min_sentences = 14;
    int max_sentences = 18;
    int summary_sentences = 3;
    std::uint64_t seed = 0;
};

std::vector<CorpusRecord> make_synthetic_corpus(const SyntheticOptions& options);

// Deterministic splitmix64 stream, shared by the test helpers.
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    // in [0, bound)
    std::uint64_t below(std::uint64_t bound);
    // in [0, 1)
    double uniform();

private:
    std::uint64_t state_;
};

} // namespace singpair::testing
