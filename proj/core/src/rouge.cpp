#include "singpair/rouge.hpp"

#include "singpair/errors.hpp"

#include <algorithm>
#include <unordered_map>

namespace singpair {

namespace {

std::vector<std::string> maybe_stem(const std::vector<std::string>& tokens, bool stemming) {
    if (!stemming) return tokens;
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(porter_stem(t));
    return out;
}

// Counting units for ROUGE-SU: unigrams plus skip-bigrams whose two tokens
// have at most max_gap tokens between them.
std::unordered_map<std::string, int> su_units(const std::vector<std::string>& tokens, int max_gap) {
    std::unordered_map<std::string, int> counts;
    for (const auto& t : tokens) ++counts[t];
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::size_t hi = std::min(tokens.size(), i + 2 + static_cast<std::size_t>(max_gap));
        for (std::size_t j = i + 1; j < hi; ++j) ++counts[tokens[i] + ' ' + tokens[j]];
    }
    return counts;
}

long clipped_overlap(const std::unordered_map<std::string, int>& cand,
                     const std::unordered_map<std::string, int>& ref) {
    long overlap = 0;
    for (const auto& [unit, count] : cand) {
        auto it = ref.find(unit);
        if (it != ref.end()) overlap += std::min(count, it->second);
    }
    return overlap;
}

long total(const std::unordered_map<std::string, int>& counts) {
    long sum = 0;
    for (const auto& [unit, count] : counts) sum += count;
    return sum;
}

RougeScore ratio_score(long overlap, long cand_total, long ref_total) {
    double p = cand_total > 0 ? static_cast<double>(overlap) / static_cast<double>(cand_total) : 0.0;
    double r = ref_total > 0 ? static_cast<double>(overlap) / static_cast<double>(ref_total) : 0.0;
    return make_rouge_score(p, r);
}

} // namespace

RougeScore make_rouge_score(double precision, double recall) {
    RougeScore s;
    s.precision = precision;
    s.recall = recall;
    s.f1 = precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
    return s;
}

RougeScore rouge_n(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, int n, const RougeConfig& config) {
    auto cand = ngrams(maybe_stem(candidate, config.stemming), n);
    auto ref = ngrams(maybe_stem(reference, config.stemming), n);
    return ratio_score(clipped_overlap(cand, ref), total(cand), total(ref));
}

RougeScore rouge_l(const std::vector<std::string>& candidate,
                   const std::vector<std::string>& reference, const RougeConfig& config) {
    auto cand = maybe_stem(candidate, config.stemming);
    auto ref = maybe_stem(reference, config.stemming);
    if (cand.empty() || ref.empty()) return make_rouge_score(0.0, 0.0);

    // Rolling two-row LCS.
    std::vector<long> prev(ref.size() + 1, 0), cur(ref.size() + 1, 0);
    for (std::size_t i = 1; i <= cand.size(); ++i) {
        for (std::size_t j = 1; j <= ref.size(); ++j) {
            if (cand[i - 1] == ref[j - 1]) {
                cur[j] = prev[j - 1] + 1;
            } else {
                cur[j] = std::max(prev[j], cur[j - 1]);
            }
        }
        std::swap(prev, cur);
    }
    long lcs = prev[ref.size()];
    return ratio_score(lcs, static_cast<long>(cand.size()), static_cast<long>(ref.size()));
}

RougeScore rouge_su4(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, const RougeConfig& config) {
    auto cand = su_units(maybe_stem(candidate, config.stemming), config.su4_max_gap);
    auto ref = su_units(maybe_stem(reference, config.stemming), config.su4_max_gap);
    return ratio_score(clipped_overlap(cand, ref), total(cand), total(ref));
}

double rouge_average(const std::vector<std::string>& candidate,
                     const std::vector<std::string>& reference, const RougeConfig& config) {
    double r1 = rouge_n(candidate, reference, 1, config).f1;
    double r2 = rouge_n(candidate, reference, 2, config).f1;
    double rl = rouge_l(candidate, reference, config).f1;
    return (r1 + r2 + rl) / 3.0;
}

std::map<std::string, RougeScore> evaluate_summary_rouge(
    const std::vector<std::vector<std::string>>& summary_sentences,
    const std::vector<ReferenceSummary>& references, const RougeConfig& config) {
    if (references.empty()) throw ValidationError("evaluate_summary_rouge: no references");
    if (config.word_limit && *config.word_limit <= 0)
        throw ValidationError("evaluate_summary_rouge: word_limit must be positive");

    std::vector<std::string> candidate;
    for (const auto& sent : summary_sentences)
        candidate.insert(candidate.end(), sent.begin(), sent.end());
    if (config.word_limit) candidate = truncate_words(candidate, *config.word_limit);

    struct Sums {
        double p = 0, r = 0, f = 0;
    };
    std::map<std::string, Sums> sums;
    for (const auto& ref : references) {
        std::vector<std::string> ref_tokens;
        for (const auto& sent : ref.sentences)
            ref_tokens.insert(ref_tokens.end(), sent.begin(), sent.end());
        std::map<std::string, RougeScore> scores{
            {"rouge-1", rouge_n(candidate, ref_tokens, 1, config)},
            {"rouge-2", rouge_n(candidate, ref_tokens, 2, config)},
            {"rouge-l", rouge_l(candidate, ref_tokens, config)},
            {"rouge-su4", rouge_su4(candidate, ref_tokens, config)},
        };
        for (const auto& [variant, score] : scores) {
            sums[variant].p += score.precision;
            sums[variant].r += score.recall;
            sums[variant].f += score.f1;
        }
    }

    std::map<std::string, RougeScore> out;
    double n = static_cast<double>(references.size());
    for (const auto& [variant, s] : sums) {
        RougeScore score;
        score.precision = s.p / n;
        score.recall = s.r / n;
        score.f1 = s.f / n;
        out[variant] = score;
    }
    return out;
}

} // namespace singpair
