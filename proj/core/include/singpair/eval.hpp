#pragma once

#include "singpair/candidates.hpp"
#include "singpair/oracle.hpp"
#include "singpair/rouge.hpp"
#include "singpair/select.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace singpair {

struct PrfCounts {
    long intersection = 0;
    long predicted = 0;
    long target = 0;

    double precision() const;
    double recall() const;
    double f1() const;
};

// Precision/recall/F1 of the uncollapsed system sentences against the
// primary, secondary and full ground-truth sentence sets.
struct SelectionEvalReport {
    PrfCounts primary;
    PrfCounts secondary;
    PrfCounts all;
    bool secondary_target_empty = false;
    // Sentences that are primary in one ground-truth set and secondary in
    // another; reported alongside the metrics.
    long primary_secondary_overlap = 0;
};

struct RougeReport {
    std::map<std::string, RougeScore> variants; // mean over records
    long records = 0;
};

// Union of all sentences in all instances, deduplicated.
std::set<SentenceRef> uncollapse(const std::vector<Instance>& instances);

SelectionEvalReport evaluate_selection(const std::vector<Instance>& system,
                                       const std::vector<GroundTruthSet>& gt_sets);

// Micro-average: counts summed across records, then P/R/F recomputed.
SelectionEvalReport aggregate_reports(const std::vector<SelectionEvalReport>& reports);

// Per record: assemble the extract under the word cap, score against every
// reference, then average each variant over records.
RougeReport evaluate_rouge_run(const std::vector<RecordSelection>& selections,
                               const std::vector<CorpusRecord>& corpus,
                               const RougeConfig& config);

void save_selection_report(const SelectionEvalReport& aggregate,
                           const std::vector<std::pair<std::string, SelectionEvalReport>>& per_record,
                           const std::string& path);
// Table-style row: P, R, F for primary, secondary, all.
void save_selection_report_tsv(const SelectionEvalReport& aggregate, const std::string& path);

void save_rouge_report(const RougeReport& report, const std::string& path);

} // namespace singpair
