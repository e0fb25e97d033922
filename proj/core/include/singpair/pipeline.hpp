#pragma once

#include "singpair/candidates.hpp"
#include "singpair/corpus.hpp"
#include "singpair/oracle.hpp"
#include "singpair/select.hpp"
#include "singpair/vsm.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singpair {

// Dataset-shaped defaults; every field is overridable from the CLI.
struct DatasetProfile {
    std::string name;
    int budget_instances = 4;       // instances selected per record
    int word_cap = 100;             // extract truncation for ROUGE
    int top_k = 5;                  // multi-doc candidate pooling
    int mega_max_per_doc = 20;      // multi-doc oracle flattening
    int max_candidate_sentences = 30; // single-doc enumeration cap
    double mmr_lambda = 0.6;
};

// Profiles: "cnndm" (N=4, cap 100), "xsum" (N=1, cap 40),
// "duc04" (N=5, cap 100, top_k=5). Throws ValidationError on unknown names.
DatasetProfile dataset_profile(const std::string& name);

// The sentence space candidates are enumerated over: the first document
// truncated to max_candidate_sentences for single-doc records, the pooled
// top_k prefix of each document for multi-doc records.
SentencePool candidate_pool(const CorpusRecord& record, const DatasetProfile& profile);

// Featurization context shared by every instance of one record.
struct RecordContext {
    SentencePool pool;
    SparseVector doc_vector;
    int doc_length = 1; // normalizer for the position features
};

RecordContext make_record_context(const CorpusRecord& record, const DatasetProfile& profile,
                                  const IdfTable& idf, const StopwordList& stopwords);

std::vector<std::vector<double>> featurize_record(const RecordContext& context,
                                                  const std::vector<Instance>& instances,
                                                  const IdfTable& idf,
                                                  const StopwordList& stopwords);

// MMR selection for one record given raw per-instance scores.
RecordSelection select_record(const CorpusRecord& record, const RecordContext& context,
                              const std::vector<Instance>& candidates,
                              const std::map<std::string, double>& raw_scores,
                              const IdfTable& idf, const StopwordList& stopwords,
                              const DatasetProfile& profile,
                              std::optional<int> budget_words = std::nullopt);

// Runs fn(i) for i in [0, n) across at most `jobs` threads; exceptions are
// rethrown on the caller thread. Results must be written to pre-sized slots.
void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace singpair
