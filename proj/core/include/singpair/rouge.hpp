#pragma once

#include "singpair/textproc.hpp"
#include "singpair/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singpair {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

RougeScore make_rouge_score(double precision, double recall);

struct RougeConfig {
    bool stemming = false;
    std::optional<int> word_limit; // applied to the candidate
    int su4_max_gap = 4;           // max tokens skipped inside a skip-bigram
};

// Clipped n-gram overlap. Empty candidate or reference n-gram sets yield 0.
RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n,
                   const RougeConfig& config = {});

// Longest common subsequence ratio (plain LCS, no length weighting).
RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference,
                   const RougeConfig& config = {});

// Skip-bigrams with gap <= su4_max_gap plus unigrams, clipped like rouge_n.
RougeScore rouge_su4(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference,
                     const RougeConfig& config = {});

// Mean of the F1 of ROUGE-1, ROUGE-2 and ROUGE-L; the sentence similarity
// used when deriving ground-truth sets.
double rouge_average(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference,
                     const RougeConfig& config = {});

// Scores the concatenated summary (truncated to config.word_limit) against
// every reference and averages per variant. Keys: "rouge-1", "rouge-2",
// "rouge-l", "rouge-su4". Throws ValidationError when references is empty.
std::map<std::string, RougeScore> evaluate_summary_rouge(
    const std::vector<std::vector<std::string>>& summary_sentences,
    const std::vector<ReferenceSummary>& references, const RougeConfig& config);

} // namespace singpair
