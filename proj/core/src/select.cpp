#include "singpair/select.hpp"

#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace singpair {

using nlohmann::json;

std::map<std::string, double> normalize_scores(const std::map<std::string, double>& scores) {
    if (scores.empty()) throw ValidationError("normalize_scores: empty score map");
    double lo = scores.begin()->second, hi = lo;
    for (const auto& [id, s] : scores) {
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    std::map<std::string, double> out;
    if (hi == lo) {
        for (const auto& [id, s] : scores) out[id] = 0.5;
    } else {
        for (const auto& [id, s] : scores) out[id] = (s - lo) / (hi - lo);
    }
    return out;
}

namespace {

int instance_word_count(const Instance& instance, const SentencePool& pool) {
    auto words = [](const std::vector<std::string>& tokens) {
        int n = 0;
        for (const auto& t : tokens)
            if (!is_punctuation_token(t)) ++n;
        return n;
    };
    int count = words(pool.at(instance.first).tokens);
    if (instance.second) count += words(pool.at(*instance.second).tokens);
    return count;
}

} // namespace

SelectionResult mmr_select(const std::vector<Instance>& candidates,
                           const std::map<std::string, double>& scores,
                           const SentencePool& pool, const IdfTable& idf,
                           const StopwordList& stopwords, const SelectionConfig& config) {
    if (candidates.empty()) throw ValidationError("mmr_select: no candidates");
    if (config.lambda < 0.0 || config.lambda > 1.0)
        throw ValidationError("mmr_select: lambda must be in [0,1]");
    if (!config.budget_instances && !config.budget_words)
        throw ValidationError("mmr_select: at least one budget must be set");

    std::vector<SparseVector> vectors;
    vectors.reserve(candidates.size());
    std::vector<double> importance(candidates.size());
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        vectors.push_back(instance_vector(candidates[i], pool, idf, stopwords));
        auto it = scores.find(candidates[i].id());
        if (it == scores.end())
            throw ValidationError("mmr_select: no score for instance " + candidates[i].id());
        importance[i] = it->second;
    }

    SelectionResult result;
    std::vector<bool> picked(candidates.size(), false);
    SparseVector summary_sum; // running sum of selected instance vectors
    int words_used = 0;

    while (true) {
        if (config.budget_instances &&
            static_cast<int>(result.selected.size()) >= *config.budget_instances)
            break;

        SparseVector summary_mean = summary_sum;
        if (!result.selected.empty()) {
            for (auto& [gram, w] : summary_mean.entries)
                w /= static_cast<double>(result.selected.size());
        }

        int best = -1;
        double best_value = 0.0, best_redundancy = 0.0;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            if (picked[i]) continue;
            double redundancy =
                result.selected.empty() ? 0.0 : cosine(vectors[i], summary_mean);
            double value = config.lambda * importance[i] - (1.0 - config.lambda) * redundancy;
            bool better = best < 0 || value > best_value ||
                          (value == best_value &&
                           candidates[i].id() < candidates[best].id());
            if (better) {
                best = static_cast<int>(i);
                best_value = value;
                best_redundancy = redundancy;
            }
        }
        if (best < 0) break; // exhausted

        if (config.budget_words &&
            words_used + instance_word_count(candidates[best], pool) > *config.budget_words)
            break;

        picked[best] = true;
        result.selected.push_back(candidates[best]);
        result.trace.push_back(MmrStep{candidates[best].id(), importance[best],
                                       best_redundancy, best_value});
        words_used += instance_word_count(candidates[best], pool);
        for (const auto& [gram, w] : vectors[best].entries) summary_sum.entries[gram] += w;
    }
    return result;
}

std::vector<std::string> assemble_extract(const SelectionResult& result,
                                          const SentencePool& pool,
                                          std::optional<int> word_cap) {
    std::vector<std::string> tokens;
    for (const auto& instance : result.selected) {
        const auto& first = pool.at(instance.first).tokens;
        tokens.insert(tokens.end(), first.begin(), first.end());
        if (instance.second) {
            const auto& second = pool.at(*instance.second).tokens;
            tokens.insert(tokens.end(), second.begin(), second.end());
        }
    }
    if (word_cap) tokens = truncate_words(tokens, *word_cap);
    return tokens;
}

void save_selections(const std::vector<RecordSelection>& selections, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write selection file: " + path);
    for (const auto& sel : selections) {
        json trace = json::array();
        for (const auto& step : sel.trace) {
            trace.push_back(json{{"instance_id", step.instance_id},
                                 {"importance", step.importance},
                                 {"redundancy", step.redundancy},
                                 {"mmr", step.mmr}});
        }
        json j{{"record_id", sel.record_id}, {"selected", sel.selected},
               {"trace", std::move(trace)}};
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<RecordSelection> load_selections(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open selection file: " + path);
    std::vector<RecordSelection> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(where + ": malformed JSON: " + e.what());
        }
        RecordSelection sel;
        sel.record_id = j.at("record_id").get<std::string>();
        for (const auto& id : j.at("selected")) sel.selected.push_back(id.get<std::string>());
        if (j.contains("trace")) {
            for (const auto& tj : j["trace"]) {
                MmrStep step;
                step.instance_id = tj.at("instance_id").get<std::string>();
                step.importance = tj.at("importance").get<double>();
                step.redundancy = tj.at("redundancy").get<double>();
                step.mmr = tj.at("mmr").get<double>();
                sel.trace.push_back(std::move(step));
            }
        }
        out.push_back(std::move(sel));
    }
    return out;
}

} // namespace singpair
