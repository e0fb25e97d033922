#include "singpair/eval.hpp"

#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <unordered_map>

namespace singpair {

using nlohmann::json;

double PrfCounts::precision() const {
    return predicted > 0 ? static_cast<double>(intersection) / static_cast<double>(predicted) : 0.0;
}

double PrfCounts::recall() const {
    return target > 0 ? static_cast<double>(intersection) / static_cast<double>(target) : 0.0;
}

double PrfCounts::f1() const {
    double p = precision(), r = recall();
    return p + r > 0 ? 2.0 * p * r / (p + r) : 0.0;
}

std::set<SentenceRef> uncollapse(const std::vector<Instance>& instances) {
    std::set<SentenceRef> out;
    for (const auto& inst : instances) {
        out.insert(inst.first);
        if (inst.second) out.insert(*inst.second);
    }
    return out;
}

namespace {

PrfCounts count_overlap(const std::set<SentenceRef>& predicted,
                        const std::set<SentenceRef>& target) {
    PrfCounts counts;
    counts.predicted = static_cast<long>(predicted.size());
    counts.target = static_cast<long>(target.size());
    for (const auto& ref : predicted)
        if (target.count(ref)) ++counts.intersection;
    return counts;
}

} // namespace

SelectionEvalReport evaluate_selection(const std::vector<Instance>& system,
                                       const std::vector<GroundTruthSet>& gt_sets) {
    std::set<SentenceRef> predicted = uncollapse(system);
    std::set<SentenceRef> primary, secondary, all;
    for (const auto& set : gt_sets) {
        primary.insert(set.primary);
        all.insert(set.primary);
        if (set.secondary) {
            secondary.insert(*set.secondary);
            all.insert(*set.secondary);
        }
    }

    SelectionEvalReport report;
    report.primary = count_overlap(predicted, primary);
    report.secondary = count_overlap(predicted, secondary);
    report.all = count_overlap(predicted, all);
    report.secondary_target_empty = secondary.empty();
    for (const auto& ref : secondary)
        if (primary.count(ref)) ++report.primary_secondary_overlap;
    return report;
}

SelectionEvalReport aggregate_reports(const std::vector<SelectionEvalReport>& reports) {
    if (reports.empty()) throw ValidationError("aggregate_reports: no reports");
    SelectionEvalReport out;
    out.secondary_target_empty = true;
    for (const auto& r : reports) {
        for (auto [sum, part] : {std::pair{&out.primary, &r.primary},
                                 std::pair{&out.secondary, &r.secondary},
                                 std::pair{&out.all, &r.all}}) {
            sum->intersection += part->intersection;
            sum->predicted += part->predicted;
            sum->target += part->target;
        }
        out.secondary_target_empty = out.secondary_target_empty && r.secondary_target_empty;
        out.primary_secondary_overlap += r.primary_secondary_overlap;
    }
    return out;
}

RougeReport evaluate_rouge_run(const std::vector<RecordSelection>& selections,
                               const std::vector<CorpusRecord>& corpus,
                               const RougeConfig& config) {
    std::unordered_map<std::string, const CorpusRecord*> by_id;
    for (const auto& rec : corpus) by_id[rec.record_id] = &rec;

    RougeReport report;
    std::map<std::string, RougeScore> sums;
    for (const auto& sel : selections) {
        auto it = by_id.find(sel.record_id);
        if (it == by_id.end())
            throw ValidationError("evaluate_rouge_run: record \"" + sel.record_id +
                                  "\" not in corpus");
        const CorpusRecord& rec = *it->second;

        std::vector<Sentence> all_sentences;
        for (const auto& doc : rec.documents)
            all_sentences.insert(all_sentences.end(), doc.sentences.begin(), doc.sentences.end());
        SentencePool pool(std::move(all_sentences));

        SelectionResult result;
        for (const auto& id : sel.selected) result.selected.push_back(parse_instance_id(id));
        std::vector<std::string> extract = assemble_extract(result, pool, config.word_limit);

        std::vector<ReferenceSummary> references;
        if (rec.summary) references.push_back(*rec.summary);
        references.insert(references.end(), rec.extra_references.begin(),
                          rec.extra_references.end());
        if (references.empty())
            throw ValidationError("evaluate_rouge_run: record \"" + sel.record_id +
                                  "\" has no references");

        auto scores = evaluate_summary_rouge({extract}, references, config);
        for (const auto& [variant, score] : scores) {
            sums[variant].precision += score.precision;
            sums[variant].recall += score.recall;
            sums[variant].f1 += score.f1;
        }
        ++report.records;
    }
    if (report.records == 0) throw ValidationError("evaluate_rouge_run: no selections");

    double n = static_cast<double>(report.records);
    for (const auto& [variant, sum] : sums) {
        RougeScore mean;
        mean.precision = sum.precision / n;
        mean.recall = sum.recall / n;
        mean.f1 = sum.f1 / n;
        report.variants[variant] = mean;
    }
    return report;
}

namespace {

json prf_json(const PrfCounts& counts) {
    return json{{"precision", counts.precision()}, {"recall", counts.recall()},
                {"f1", counts.f1()},               {"intersection", counts.intersection},
                {"predicted", counts.predicted},   {"target", counts.target}};
}

json report_json(const SelectionEvalReport& report) {
    return json{{"primary", prf_json(report.primary)},
                {"secondary", prf_json(report.secondary)},
                {"all", prf_json(report.all)},
                {"secondary_target_empty", report.secondary_target_empty},
                {"primary_secondary_overlap", report.primary_secondary_overlap}};
}

} // namespace

void save_selection_report(const SelectionEvalReport& aggregate,
                           const std::vector<std::pair<std::string, SelectionEvalReport>>& per_record,
                           const std::string& path) {
    json records = json::object();
    for (const auto& [record_id, report] : per_record) records[record_id] = report_json(report);
    json j{{"aggregate", report_json(aggregate)}, {"per_record", std::move(records)}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report file: " + path);
    out << j.dump(2) << '\n';
}

void save_selection_report_tsv(const SelectionEvalReport& aggregate, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report file: " + path);
    out << "primary_p\tprimary_r\tprimary_f\tsecondary_p\tsecondary_r\tsecondary_f\t"
           "all_p\tall_r\tall_f\n";
    char buf[64];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        out << buf << sep;
    };
    put(aggregate.primary.precision(), '\t');
    put(aggregate.primary.recall(), '\t');
    put(aggregate.primary.f1(), '\t');
    put(aggregate.secondary.precision(), '\t');
    put(aggregate.secondary.recall(), '\t');
    put(aggregate.secondary.f1(), '\t');
    put(aggregate.all.precision(), '\t');
    put(aggregate.all.recall(), '\t');
    put(aggregate.all.f1(), '\n');
    if (!out) throw IoError("write failed: " + path);
}

void save_rouge_report(const RougeReport& report, const std::string& path) {
    json variants = json::object();
    for (const auto& [variant, score] : report.variants) {
        variants[variant] = json{{"precision", score.precision},
                                 {"recall", score.recall},
                                 {"f1", score.f1}};
    }
    json j{{"records", report.records}, {"variants", std::move(variants)}};
    std::ofstream out(path);
    if (!out) throw IoError("cannot write report file: " + path);
    out << j.dump(2) << '\n';
}

} // namespace singpair
