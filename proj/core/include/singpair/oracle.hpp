#pragma once

#include "singpair/corpus.hpp"
#include "singpair/rouge.hpp"
#include "singpair/textproc.hpp"
#include "singpair/types.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singpair {

// Source sentences matched to one summary sentence: the primary carries the
// highest similarity to it, the secondary (pairs only) complements it.
struct GroundTruthSet {
    int summary_index = 0;
    SentenceRef primary;
    std::optional<SentenceRef> secondary;
    int raw_size = 1; // picks before truncation to two

    bool is_pair() const { return secondary.has_value(); }
    bool operator==(const GroundTruthSet&) const = default;
};

struct OracleConfig {
    bool stemming = false;       // applied to similarity and overlap alike
    int min_shared_content = 2;  // distinct shared content-word types to continue
    int max_kept = 2;            // picks kept in the ground-truth set
    int mega_max_per_doc = 20;   // multi-doc flattening cap
};

struct OracleStats {
    std::map<int, double> size_histogram; // raw_size -> fraction, includes 0
    double empty_fraction = 0.0;
    std::map<int, double> primary_position_histogram;   // sent_index -> fraction
    std::map<int, double> secondary_position_histogram; // sent_index -> fraction
    std::map<int, double> fusion_rate_by_summary_position; // summary index 0..4 -> pair fraction
};

// Removes every occurrence of any word type present in source_tokens from
// summary_tokens (stemmed comparison when config enables stemming).
std::vector<std::string> remove_overlap(const std::vector<std::string>& summary_tokens,
                                        const std::vector<std::string>& source_tokens,
                                        bool stemming = false);

// Greedy similarity-and-removal loop over the document's sentences. Returns
// nullopt when no sentence ever shares at least min_shared_content distinct
// content-word types with the residual summary sentence.
std::optional<GroundTruthSet> derive_ground_truth(const Document& doc,
                                                  const std::vector<std::string>& summary_sentence,
                                                  const StopwordList& stopwords,
                                                  const OracleConfig& config = {});

// One optional set per summary sentence; empty sets dropped. Multi-document
// records are flattened through build_mega_document first.
std::vector<GroundTruthSet> derive_all(const CorpusRecord& record, const StopwordList& stopwords,
                                       const OracleConfig& config = {});

OracleStats corpus_statistics(const std::vector<CorpusRecord>& records,
                              const StopwordList& stopwords, const OracleConfig& config = {});

// oracle-jsonl, one line per record:
//   {"record_id": str, "sets": [{"summary_index": int,
//    "primary": {"doc_id": str, "sent_index": int},
//    "secondary": {...}|null, "raw_size": int}]}
void save_ground_truth(const std::vector<std::pair<std::string, std::vector<GroundTruthSet>>>& per_record,
                       const std::string& path);
std::vector<std::pair<std::string, std::vector<GroundTruthSet>>> load_ground_truth(const std::string& path);

void save_oracle_stats(const OracleStats& stats, const std::string& path);

} // namespace singpair
