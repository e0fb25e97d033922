#include "singpair/baselines.hpp"

#include "singpair/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace singpair {

namespace {

std::vector<Instance> as_singletons(const Document& doc, const std::vector<int>& picks) {
    std::vector<Instance> out;
    out.reserve(picks.size());
    for (int i : picks) out.push_back(Instance{doc.sentences[i].ref(), std::nullopt});
    return out;
}

} // namespace

std::vector<Instance> lead(const Document& doc, int n) {
    if (n < 1) throw ValidationError("lead: n must be >= 1");
    std::vector<int> picks;
    int take = std::min<int>(n, static_cast<int>(doc.sentences.size()));
    for (int i = 0; i < take; ++i) picks.push_back(i);
    return as_singletons(doc, picks);
}

std::vector<Instance> sumbasic(const Document& doc, int n, const StopwordList& stopwords) {
    if (n < 1) throw ValidationError("sumbasic: n must be >= 1");

    std::unordered_map<std::string, double> prob;
    long total = 0;
    std::vector<std::vector<std::string>> sentence_content(doc.sentences.size());
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
        sentence_content[i] = content_words(doc.sentences[i].tokens, stopwords);
        for (const auto& w : sentence_content[i]) {
            prob[w] += 1.0;
            ++total;
        }
    }
    if (total == 0) throw ValidationError("sumbasic: document has no content words");
    for (auto& [w, p] : prob) p /= static_cast<double>(total);

    std::vector<int> picks;
    std::vector<bool> used(doc.sentences.size(), false);
    while (static_cast<int>(picks.size()) < n) {
        // Most probable word, ties by lexicographic order.
        std::string top_word;
        double top_prob = -1.0;
        for (const auto& [w, p] : prob) {
            if (p > top_prob || (p == top_prob && w < top_word)) {
                top_prob = p;
                top_word = w;
            }
        }

        int best = -1;
        double best_score = -1.0;
        for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
            if (used[i] || sentence_content[i].empty()) continue;
            if (std::find(sentence_content[i].begin(), sentence_content[i].end(), top_word) ==
                sentence_content[i].end())
                continue;
            double score = 0.0;
            for (const auto& w : sentence_content[i]) score += prob[w];
            score /= static_cast<double>(sentence_content[i].size());
            if (score > best_score) { // ties keep the earlier sentence
                best_score = score;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break; // no unused sentence contains the top word

        used[best] = true;
        picks.push_back(best);
        std::unordered_set<std::string> types(sentence_content[best].begin(),
                                              sentence_content[best].end());
        for (const auto& w : types) prob[w] *= prob[w];
    }
    std::sort(picks.begin(), picks.end());
    return as_singletons(doc, picks);
}

std::vector<Instance> klsum(const Document& doc, int n, const StopwordList& stopwords) {
    if (n < 1) throw ValidationError("klsum: n must be >= 1");
    constexpr double kEps = 1e-9;

    std::map<std::string, double> doc_counts;
    long doc_total = 0;
    std::vector<std::vector<std::string>> sentence_content(doc.sentences.size());
    for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
        sentence_content[i] = content_words(doc.sentences[i].tokens, stopwords);
        for (const auto& w : sentence_content[i]) {
            doc_counts[w] += 1.0;
            ++doc_total;
        }
    }
    if (doc_total == 0) throw ValidationError("klsum: document has no content words");

    const double vocab = static_cast<double>(doc_counts.size());
    std::map<std::string, double> summary_counts;
    double summary_total = 0.0;

    auto kl_with = [&](const std::vector<std::string>& extra) {
        std::unordered_map<std::string, double> counts(summary_counts.begin(),
                                                       summary_counts.end());
        double total = summary_total;
        for (const auto& w : extra) {
            if (!doc_counts.count(w)) continue; // outside the doc support
            counts[w] += 1.0;
            total += 1.0;
        }
        double kl = 0.0;
        for (const auto& [w, c] : doc_counts) {
            double p = c / static_cast<double>(doc_total);
            auto it = counts.find(w);
            double cq = it == counts.end() ? 0.0 : it->second;
            double q = (cq + kEps) / (total + kEps * vocab);
            kl += p * std::log(p / q);
        }
        return kl;
    };

    std::vector<int> picks;
    std::vector<bool> used(doc.sentences.size(), false);
    while (static_cast<int>(picks.size()) < n) {
        int best = -1;
        double best_kl = 0.0;
        for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
            if (used[i]) continue;
            double kl = kl_with(sentence_content[i]);
            if (best < 0 || kl < best_kl) { // ties keep the earlier sentence
                best_kl = kl;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        used[best] = true;
        picks.push_back(best);
        for (const auto& w : sentence_content[best]) {
            if (!doc_counts.count(w)) continue;
            summary_counts[w] += 1.0;
            summary_total += 1.0;
        }
    }
    std::sort(picks.begin(), picks.end());
    return as_singletons(doc, picks);
}

std::vector<double> lexrank_scores(const Document& doc, const IdfTable& idf,
                                   const StopwordList& stopwords, const BaselineConfig& config) {
    const std::size_t n = doc.sentences.size();
    if (n == 0) throw ValidationError("lexrank_scores: empty document");

    std::vector<SparseVector> vectors;
    vectors.reserve(n);
    for (const auto& s : doc.sentences)
        vectors.push_back(sentence_vector(s.tokens, idf, stopwords));

    // Binary adjacency at the cosine threshold, no self loops.
    std::vector<std::vector<std::size_t>> edges(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (cosine(vectors[i], vectors[j]) >= config.lexrank_threshold) {
                edges[i].push_back(j);
                edges[j].push_back(i);
            }
        }
    }

    const double d = config.lexrank_damping;
    const double uniform = 1.0 / static_cast<double>(n);
    std::vector<double> score(n, uniform), next(n);
    for (int iter = 0; iter < 1000; ++iter) {
        double dangling = 0.0;
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (edges[i].empty()) {
                dangling += score[i];
                continue;
            }
            double share = score[i] / static_cast<double>(edges[i].size());
            for (std::size_t j : edges[i]) next[j] += share;
        }
        double delta = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double value = (1.0 - d) * uniform + d * (next[i] + dangling * uniform);
            delta += std::abs(value - score[i]);
            score[i] = value;
        }
        if (delta < config.lexrank_tolerance) break;
    }
    return score;
}

std::vector<Instance> lexrank(const Document& doc, int n, const IdfTable& idf,
                              const StopwordList& stopwords, const BaselineConfig& config) {
    if (n < 1) throw ValidationError("lexrank: n must be >= 1");
    auto scores = lexrank_scores(doc, idf, stopwords, config);

    std::vector<int> order(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) order[i] = static_cast<int>(i);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return scores[a] > scores[b]; });
    order.resize(std::min<std::size_t>(order.size(), static_cast<std::size_t>(n)));
    std::sort(order.begin(), order.end()); // document order in the output
    return as_singletons(doc, order);
}

} // namespace singpair
