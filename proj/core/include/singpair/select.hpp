#pragma once

#include "singpair/candidates.hpp"
#include "singpair/vsm.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace singpair {

struct SelectionConfig {
    double lambda = 0.6;
    std::optional<int> budget_instances;
    std::optional<int> budget_words; // non-punctuation words
};

struct MmrStep {
    std::string instance_id;
    double importance = 0.0;
    double redundancy = 0.0;
    double mmr = 0.0;
};

struct SelectionResult {
    std::vector<Instance> selected;
    std::vector<MmrStep> trace;
};

// Min-max normalization over the candidate set; all-equal inputs map to 0.5.
std::map<std::string, double> normalize_scores(const std::map<std::string, double>& scores);

// Greedy argmax of lambda*I - (1-lambda)*R until a budget stops it, where R
// is the cosine between the candidate and the mean vector of everything
// selected so far. Ties go to the smaller instance_id.
SelectionResult mmr_select(const std::vector<Instance>& candidates,
                           const std::map<std::string, double>& scores,
                           const SentencePool& pool, const IdfTable& idf,
                           const StopwordList& stopwords, const SelectionConfig& config);

// Concatenated tokens of the selected instances, in selection order,
// truncated at word_cap non-punctuation words.
std::vector<std::string> assemble_extract(const SelectionResult& result,
                                          const SentencePool& pool,
                                          std::optional<int> word_cap);

// Selection-output JSONL:
//   {"record_id": str, "selected": [instance_id,...], "trace": [...]}
struct RecordSelection {
    std::string record_id;
    std::vector<std::string> selected;
    std::vector<MmrStep> trace;
};

void save_selections(const std::vector<RecordSelection>& selections, const std::string& path);
std::vector<RecordSelection> load_selections(const std::string& path);

} // namespace singpair
