#include "singpair/oracle.hpp"

#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <unordered_set>

namespace singpair {

using nlohmann::json;

namespace {

std::vector<std::string> stem_all(const std::vector<std::string>& tokens) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) out.push_back(porter_stem(t));
    return out;
}

// Distinct content-word types shared between the residual summary tokens and
// a source sentence; the loop-continuation test of the derivation.
int shared_content_types(const std::vector<std::string>& residual,
                         const std::vector<std::string>& source,
                         const StopwordList& stopwords, bool stemming) {
    std::unordered_set<std::string> residual_types;
    for (const auto& t : content_words(residual, stopwords))
        residual_types.insert(stemming ? porter_stem(t) : t);
    std::unordered_set<std::string> counted;
    for (const auto& t : content_words(source, stopwords)) {
        std::string key = stemming ? porter_stem(t) : t;
        if (residual_types.count(key)) counted.insert(key);
    }
    return static_cast<int>(counted.size());
}

} // namespace

std::vector<std::string> remove_overlap(const std::vector<std::string>& summary_tokens,
                                        const std::vector<std::string>& source_tokens,
                                        bool stemming) {
    std::unordered_set<std::string> source_types;
    for (const auto& t : source_tokens) source_types.insert(stemming ? porter_stem(t) : t);
    std::vector<std::string> out;
    out.reserve(summary_tokens.size());
    for (const auto& t : summary_tokens) {
        if (!source_types.count(stemming ? porter_stem(t) : t)) out.push_back(t);
    }
    return out;
}

std::optional<GroundTruthSet> derive_ground_truth(const Document& doc,
                                                  const std::vector<std::string>& summary_sentence,
                                                  const StopwordList& stopwords,
                                                  const OracleConfig& config) {
    if (doc.sentences.empty()) throw ValidationError("derive_ground_truth: empty document");

    RougeConfig rouge_cfg;
    rouge_cfg.stemming = config.stemming;

    std::vector<std::string> residual = summary_sentence;
    std::vector<bool> chosen(doc.sentences.size(), false);
    std::vector<int> picks;

    while (true) {
        // Sentences still eligible: unchosen and sharing enough distinct
        // content-word types with the residual.
        int best = -1;
        double best_sim = -1.0;
        for (std::size_t i = 0; i < doc.sentences.size(); ++i) {
            if (chosen[i]) continue;
            const auto& tokens = doc.sentences[i].tokens;
            if (shared_content_types(residual, tokens, stopwords, config.stemming) <
                config.min_shared_content)
                continue;
            double sim = rouge_average(tokens, residual, rouge_cfg);
            if (sim > best_sim) { // ties keep the earlier sentence
                best_sim = sim;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;
        chosen[best] = true;
        picks.push_back(best);
        residual = remove_overlap(residual, doc.sentences[best].tokens, config.stemming);
    }

    if (picks.empty()) return std::nullopt;

    GroundTruthSet set;
    set.raw_size = static_cast<int>(picks.size());
    set.primary = doc.sentences[picks[0]].ref();
    if (picks.size() >= 2 && config.max_kept >= 2) set.secondary = doc.sentences[picks[1]].ref();
    return set;
}

std::vector<GroundTruthSet> derive_all(const CorpusRecord& record, const StopwordList& stopwords,
                                       const OracleConfig& config) {
    if (!record.summary) throw ValidationError("derive_all: record \"" + record.record_id +
                                               "\" has no summary");
    Document doc = record.is_multidoc()
                       ? build_mega_document(record.documents, config.mega_max_per_doc)
                       : record.documents.front();
    std::vector<GroundTruthSet> sets;
    for (std::size_t n = 0; n < record.summary->sentences.size(); ++n) {
        auto set = derive_ground_truth(doc, record.summary->sentences[n], stopwords, config);
        if (set) {
            set->summary_index = static_cast<int>(n);
            sets.push_back(std::move(*set));
        }
    }
    return sets;
}

OracleStats corpus_statistics(const std::vector<CorpusRecord>& records,
                              const StopwordList& stopwords, const OracleConfig& config) {
    if (records.empty()) throw ValidationError("corpus_statistics: empty corpus");

    std::map<int, long> size_counts;
    std::map<int, long> primary_pos, secondary_pos;
    std::map<int, long> fused_at, total_at;
    long total_sentences = 0, empty_sentences = 0;

    for (const auto& record : records) {
        if (!record.summary)
            throw ValidationError("corpus_statistics: record \"" + record.record_id +
                                  "\" has no summary");
        Document doc = record.is_multidoc()
                           ? build_mega_document(record.documents, config.mega_max_per_doc)
                           : record.documents.front();
        for (std::size_t n = 0; n < record.summary->sentences.size(); ++n) {
            ++total_sentences;
            auto set = derive_ground_truth(doc, record.summary->sentences[n], stopwords, config);
            if (!set) {
                ++empty_sentences;
                ++size_counts[0];
                continue;
            }
            ++size_counts[set->raw_size];
            ++primary_pos[set->primary.sent_index];
            if (set->secondary) ++secondary_pos[set->secondary->sent_index];
            if (n <= 4) {
                ++total_at[static_cast<int>(n)];
                if (set->is_pair()) ++fused_at[static_cast<int>(n)];
            }
        }
    }

    OracleStats stats;
    stats.empty_fraction = static_cast<double>(empty_sentences) / static_cast<double>(total_sentences);
    for (const auto& [size, count] : size_counts)
        stats.size_histogram[size] = static_cast<double>(count) / static_cast<double>(total_sentences);

    long primary_total = 0, secondary_total = 0;
    for (const auto& [pos, count] : primary_pos) primary_total += count;
    for (const auto& [pos, count] : secondary_pos) secondary_total += count;
    for (const auto& [pos, count] : primary_pos)
        stats.primary_position_histogram[pos] =
            static_cast<double>(count) / static_cast<double>(primary_total);
    for (const auto& [pos, count] : secondary_pos)
        stats.secondary_position_histogram[pos] =
            static_cast<double>(count) / static_cast<double>(secondary_total);
    for (const auto& [pos, count] : total_at)
        stats.fusion_rate_by_summary_position[pos] =
            static_cast<double>(fused_at.count(pos) ? fused_at[pos] : 0) /
            static_cast<double>(count);
    return stats;
}

namespace {

json ref_to_json(const SentenceRef& ref) {
    return json{{"doc_id", ref.doc_id}, {"sent_index", ref.sent_index}};
}

SentenceRef ref_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("doc_id") || !j.contains("sent_index"))
        throw ValidationError(where + ": sentence reference needs doc_id and sent_index");
    return SentenceRef{j["doc_id"].get<std::string>(), j["sent_index"].get<int>()};
}

} // namespace

void save_ground_truth(const std::vector<std::pair<std::string, std::vector<GroundTruthSet>>>& per_record,
                       const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write ground-truth file: " + path);
    for (const auto& [record_id, sets] : per_record) {
        json sets_json = json::array();
        for (const auto& set : sets) {
            json sj;
            sj["summary_index"] = set.summary_index;
            sj["primary"] = ref_to_json(set.primary);
            sj["secondary"] = set.secondary ? ref_to_json(*set.secondary) : json(nullptr);
            sj["raw_size"] = set.raw_size;
            sets_json.push_back(std::move(sj));
        }
        out << json{{"record_id", record_id}, {"sets", std::move(sets_json)}}.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<std::pair<std::string, std::vector<GroundTruthSet>>> load_ground_truth(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open ground-truth file: " + path);
    std::vector<std::pair<std::string, std::vector<GroundTruthSet>>> out;
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
        if (!j.contains("record_id") || !j.contains("sets"))
            throw ValidationError(where + ": need record_id and sets");
        std::vector<GroundTruthSet> sets;
        for (const auto& sj : j["sets"]) {
            GroundTruthSet set;
            set.summary_index = sj.at("summary_index").get<int>();
            set.primary = ref_from_json(sj.at("primary"), where);
            if (sj.contains("secondary") && !sj["secondary"].is_null())
                set.secondary = ref_from_json(sj["secondary"], where);
            set.raw_size = sj.at("raw_size").get<int>();
            sets.push_back(std::move(set));
        }
        out.emplace_back(j["record_id"].get<std::string>(), std::move(sets));
    }
    return out;
}

void save_oracle_stats(const OracleStats& stats, const std::string& path) {
    auto histogram_json = [](const std::map<int, double>& hist) {
        json j = json::object();
        for (const auto& [key, value] : hist) j[std::to_string(key)] = value;
        return j;
    };
    json j;
    j["size_histogram"] = histogram_json(stats.size_histogram);
    j["empty_fraction"] = stats.empty_fraction;
    j["primary_position_histogram"] = histogram_json(stats.primary_position_histogram);
    j["secondary_position_histogram"] = histogram_json(stats.secondary_position_histogram);
    j["fusion_rate_by_summary_position"] = histogram_json(stats.fusion_rate_by_summary_position);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write stats file: " + path);
    out << j.dump(2) << '\n';
}

} // namespace singpair
