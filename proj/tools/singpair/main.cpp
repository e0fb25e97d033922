// Command-line front end for the singleton/pair content selection pipeline:
//   oracle -> candidates -> featurize -> train -> score -> select -> eval.

#include "singpair/baselines.hpp"
#include "singpair/candidates.hpp"
#include "singpair/corpus.hpp"
#include "singpair/errors.hpp"
#include "singpair/eval.hpp"
#include "singpair/oracle.hpp"
#include "singpair/pipeline.hpp"
#include "singpair/ranker.hpp"
#include "singpair/select.hpp"
#include "singpair/vsm.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace sp = singpair;

namespace {

struct CommonOptions {
    std::string stopwords_path;
    std::string profile = "cnndm";
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    std::uint64_t seed = 0;
};

sp::StopwordList resolve_stopwords(const CommonOptions& common) {
    if (common.stopwords_path.empty()) return sp::StopwordList::english();
    return sp::StopwordList::from_file(common.stopwords_path);
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_profile = true) {
    cmd->add_option("--stopwords", common.stopwords_path,
                    "Stopword file (one word per line); default: built-in English list");
    cmd->add_option("--jobs", common.jobs, "Record-level worker threads");
    cmd->add_option("--seed", common.seed, "RNG seed for reproducible runs");
    if (with_profile)
        cmd->add_option("--profile", common.profile, "Dataset profile: cnndm, xsum, duc04");
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- features TSV: query_id \t instance_id \t f0..f(k-1) ----

void write_features(const std::string& path,
                    const std::vector<std::tuple<std::string, std::string,
                                                 std::vector<double>>>& rows) {
    std::ofstream out(path);
    if (!out) throw sp::IoError("cannot write feature file: " + path);
    for (const auto& [query_id, instance_id, features] : rows) {
        out << query_id << '\t' << instance_id;
        for (double f : features) out << '\t' << format_double(f);
        out << '\n';
    }
    if (!out) throw sp::IoError("write failed: " + path);
}

struct FeatureRow {
    std::string query_id;
    std::string instance_id;
    std::vector<double> features;
};

std::vector<FeatureRow> read_features(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw sp::IoError("cannot open feature file: " + path);
    std::vector<FeatureRow> rows;
    std::string line;
    int line_no = 0;
    std::size_t width = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(line_no);
        FeatureRow row;
        std::size_t start = 0;
        int field = 0;
        while (start <= line.size()) {
            auto tab = line.find('\t', start);
            std::string cell = line.substr(start, tab == std::string::npos ? tab : tab - start);
            if (field == 0) {
                row.query_id = cell;
            } else if (field == 1) {
                row.instance_id = cell;
            } else {
                try {
                    std::size_t used = 0;
                    row.features.push_back(std::stod(cell, &used));
                    if (used != cell.size()) throw std::invalid_argument(cell);
                } catch (const std::exception&) {
                    throw sp::ValidationError(where + ": bad feature value \"" + cell + "\"");
                }
            }
            ++field;
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        if (field < 3) throw sp::ValidationError(where + ": expected query, instance and features");
        if (width == 0) width = row.features.size();
        if (row.features.size() != width)
            throw sp::ValidationError(where + ": inconsistent feature width");
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- subcommand bodies ----

int run_oracle(const std::string& corpus_path, const std::string& out_path,
               const std::string& stats_json, bool stemming, const CommonOptions& common) {
    auto records = sp::load_corpus(corpus_path, /*require_summary=*/true);
    if (records.empty()) throw sp::ValidationError("empty corpus: " + corpus_path);
    auto stopwords = resolve_stopwords(common);
    sp::OracleConfig config;
    config.stemming = stemming;

    std::vector<std::pair<std::string, std::vector<sp::GroundTruthSet>>> per_record(records.size());
    sp::parallel_for(common.jobs, records.size(), [&](std::size_t i) {
        per_record[i] = {records[i].record_id, sp::derive_all(records[i], stopwords, config)};
    });
    sp::save_ground_truth(per_record, out_path);

    if (!stats_json.empty()) {
        sp::OracleStats stats = sp::corpus_statistics(records, stopwords, config);
        sp::save_oracle_stats(stats, stats_json);
    }
    return 0;
}

int run_stats(const std::string& corpus_path, const std::string& out_csv, bool stemming,
              const CommonOptions& common) {
    auto records = sp::load_corpus(corpus_path, /*require_summary=*/true);
    if (records.empty()) throw sp::ValidationError("empty corpus: " + corpus_path);
    auto stopwords = resolve_stopwords(common);
    sp::OracleConfig config;
    config.stemming = stemming;
    sp::OracleStats stats = sp::corpus_statistics(records, stopwords, config);

    std::ofstream out(out_csv);
    if (!out) throw sp::IoError("cannot write stats file: " + out_csv);
    out << "series,key,value\n";
    char buf[64];
    auto row = [&](const char* series, const std::string& key, double value) {
        std::snprintf(buf, sizeof(buf), "%.6f", value);
        out << series << ',' << key << ',' << buf << '\n';
    };
    for (const auto& [size, frac] : stats.size_histogram)
        row("size_histogram", std::to_string(size), frac);
    row("empty_fraction", "", stats.empty_fraction);
    for (const auto& [pos, frac] : stats.primary_position_histogram)
        row("primary_position", std::to_string(pos), frac);
    for (const auto& [pos, frac] : stats.secondary_position_histogram)
        row("secondary_position", std::to_string(pos), frac);
    for (const auto& [pos, frac] : stats.fusion_rate_by_summary_position)
        row("fusion_rate_by_summary_position", std::to_string(pos), frac);
    if (!out) throw sp::IoError("write failed: " + out_csv);
    return 0;
}

int run_candidates(const std::string& corpus_path, const std::string& gt_path,
                   const std::string& out_path, int downsample_ratio,
                   const CommonOptions& common, const sp::DatasetProfile& profile) {
    auto records = sp::load_corpus(corpus_path);
    std::unordered_map<std::string, std::vector<sp::GroundTruthSet>> gt;
    if (!gt_path.empty()) {
        for (auto& [record_id, sets] : sp::load_ground_truth(gt_path))
            gt[record_id] = std::move(sets);
    }

    std::vector<std::vector<sp::LabeledInstance>> labeled(records.size());
    sp::parallel_for(common.jobs, records.size(), [&](std::size_t i) {
        sp::SentencePool pool = sp::candidate_pool(records[i], profile);
        auto candidates = sp::enumerate_candidates(pool);
        auto it = gt.find(records[i].record_id);
        static const std::vector<sp::GroundTruthSet> kNone;
        labeled[i] = sp::label_candidates(candidates, it == gt.end() ? kNone : it->second,
                                          records[i].record_id);
    });

    std::vector<sp::LabeledInstance> flat;
    for (auto& group : labeled) flat.insert(flat.end(), group.begin(), group.end());
    if (downsample_ratio > 0) flat = sp::downsample(flat, downsample_ratio, common.seed);
    sp::save_labeled_instances(flat, out_path);
    return 0;
}

int run_featurize(const std::string& corpus_path, const std::string& instances_path,
                  const std::string& out_path, const std::string& idf_in,
                  const std::string& idf_out, const CommonOptions& common,
                  const sp::DatasetProfile& profile) {
    auto records = sp::load_corpus(corpus_path);
    auto stopwords = resolve_stopwords(common);
    sp::IdfTable idf = idf_in.empty() ? sp::fit_idf(records, stopwords)
                                      : sp::load_idf(idf_in);
    if (!idf_out.empty()) sp::save_idf(idf, idf_out);

    auto labeled = sp::load_labeled_instances(instances_path);
    std::unordered_map<std::string, std::vector<const sp::LabeledInstance*>> by_query;
    for (const auto& item : labeled) by_query[item.query_id].push_back(&item);

    std::vector<std::vector<std::tuple<std::string, std::string, std::vector<double>>>> rows(
        records.size());
    sp::parallel_for(common.jobs, records.size(), [&](std::size_t i) {
        auto it = by_query.find(records[i].record_id);
        if (it == by_query.end()) return;
        sp::RecordContext context = sp::make_record_context(records[i], profile, idf, stopwords);
        std::vector<sp::Instance> instances;
        for (const auto* item : it->second) instances.push_back(item->instance);
        auto features = sp::featurize_record(context, instances, idf, stopwords);
        for (std::size_t r = 0; r < instances.size(); ++r)
            rows[i].emplace_back(records[i].record_id, instances[r].id(), std::move(features[r]));
    });

    std::vector<std::tuple<std::string, std::string, std::vector<double>>> flat;
    for (auto& group : rows) flat.insert(flat.end(), std::make_move_iterator(group.begin()),
                                         std::make_move_iterator(group.end()));
    if (flat.size() != labeled.size())
        throw sp::ValidationError("featurize: instance file references records missing from " +
                                  corpus_path);
    write_features(out_path, flat);
    return 0;
}

int run_train(const std::string& instances_path, const std::string& features_path,
              const std::string& model_path, const sp::TrainConfig& config) {
    auto labeled = sp::load_labeled_instances(instances_path);
    std::map<std::pair<std::string, std::string>, int> label_of;
    for (const auto& item : labeled)
        label_of[{item.query_id, item.instance.id()}] = item.label;

    auto rows = read_features(features_path);
    if (rows.empty()) throw sp::ValidationError("empty feature file: " + features_path);

    sp::RankingDataset dataset;
    dataset.feature_width = static_cast<int>(rows.front().features.size());
    std::unordered_map<std::string, std::size_t> query_index;
    for (auto& row : rows) {
        auto label_it = label_of.find({row.query_id, row.instance_id});
        if (label_it == label_of.end())
            throw sp::ValidationError("no label for (" + row.query_id + ", " + row.instance_id +
                                      ") in " + instances_path);
        auto [it, inserted] = query_index.try_emplace(row.query_id, dataset.queries.size());
        if (inserted) {
            dataset.queries.push_back(sp::RankingQuery{row.query_id, {}, {}});
        }
        auto& query = dataset.queries[it->second];
        query.features.push_back(std::move(row.features));
        query.labels.push_back(label_it->second);
    }

    sp::LambdaMartModel model = sp::train_lambdamart(dataset, config);
    sp::save_model(model, model_path);
    return 0;
}

int run_score(const std::string& model_path, const std::string& features_path,
              const std::string& out_path) {
    sp::LambdaMartModel model = sp::load_model(model_path);
    auto rows = read_features(features_path);
    std::vector<std::tuple<std::string, std::string, double>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        if (static_cast<int>(row.features.size()) != model.feature_width)
            throw sp::ValidationError("feature width mismatch against model (" +
                                      std::to_string(row.features.size()) + " vs " +
                                      std::to_string(model.feature_width) + ")");
        out.emplace_back(row.query_id, row.instance_id, model.score(row.features));
    }
    sp::save_scores(out, out_path);
    return 0;
}

int run_select(const std::string& corpus_path, const std::string& out_path,
               const std::string& scorer, const std::string& model_path,
               const std::string& scores_path, const std::string& idf_in,
               std::optional<int> budget_override, std::optional<int> budget_words,
               std::optional<double> lambda_override, const CommonOptions& common,
               sp::DatasetProfile profile) {
    if (budget_override) profile.budget_instances = *budget_override;
    if (lambda_override) profile.mmr_lambda = *lambda_override;

    auto records = sp::load_corpus(corpus_path);
    if (records.empty()) throw sp::ValidationError("empty corpus: " + corpus_path);
    auto stopwords = resolve_stopwords(common);
    sp::IdfTable idf = idf_in.empty() ? sp::fit_idf(records, stopwords) : sp::load_idf(idf_in);

    std::optional<sp::LambdaMartModel> model;
    std::map<std::pair<std::string, std::string>, double> external;
    if (scorer == "lambdamart") {
        if (model_path.empty()) throw sp::ValidationError("--scorer lambdamart needs --model");
        model = sp::load_model(model_path);
    } else if (scorer == "external-scores") {
        if (scores_path.empty())
            throw sp::ValidationError("--scorer external-scores needs --scores");
        external = sp::load_external_scores(scores_path);
    } else {
        throw sp::ValidationError("unknown scorer \"" + scorer +
                                  "\" (expected lambdamart or external-scores)");
    }

    std::vector<sp::RecordSelection> selections(records.size());
    sp::parallel_for(common.jobs, records.size(), [&](std::size_t i) {
        const auto& record = records[i];
        sp::RecordContext context = sp::make_record_context(record, profile, idf, stopwords);
        auto candidates = sp::enumerate_candidates(context.pool);

        std::map<std::string, double> raw;
        if (model) {
            auto features = sp::featurize_record(context, candidates, idf, stopwords);
            auto scores = sp::predict_scores(*model, features);
            for (std::size_t c = 0; c < candidates.size(); ++c)
                raw[candidates[c].id()] = scores[c];
        } else {
            for (const auto& cand : candidates) {
                auto it = external.find({record.record_id, cand.id()});
                if (it == external.end())
                    throw sp::ValidationError("no external score for (" + record.record_id +
                                              ", " + cand.id() + ")");
                raw[cand.id()] = it->second;
            }
        }
        selections[i] = sp::select_record(record, context, candidates, raw, idf, stopwords,
                                          profile, budget_words);
    });
    sp::save_selections(selections, out_path);
    return 0;
}

int run_baseline(const std::string& corpus_path, const std::string& out_path,
                 const std::string& method, std::optional<int> budget_override,
                 const CommonOptions& common, sp::DatasetProfile profile) {
    if (budget_override) profile.budget_instances = *budget_override;
    auto records = sp::load_corpus(corpus_path);
    if (records.empty()) throw sp::ValidationError("empty corpus: " + corpus_path);
    auto stopwords = resolve_stopwords(common);

    std::optional<sp::IdfTable> idf;
    if (method == "lexrank") idf = sp::fit_idf(records, stopwords);

    std::vector<sp::RecordSelection> selections(records.size());
    sp::parallel_for(common.jobs, records.size(), [&](std::size_t i) {
        const auto& record = records[i];
        sp::Document doc = record.is_multidoc()
                               ? sp::build_mega_document(record.documents, profile.mega_max_per_doc)
                               : record.documents.front();
        std::vector<sp::Instance> picks;
        int n = profile.budget_instances;
        if (method == "lead") {
            picks = sp::lead(doc, n);
        } else if (method == "sumbasic") {
            picks = sp::sumbasic(doc, n, stopwords);
        } else if (method == "klsum") {
            picks = sp::klsum(doc, n, stopwords);
        } else if (method == "lexrank") {
            picks = sp::lexrank(doc, n, *idf, stopwords);
        } else {
            throw sp::ValidationError("unknown baseline \"" + method +
                                      "\" (expected lead, sumbasic, klsum, lexrank)");
        }
        selections[i].record_id = record.record_id;
        for (const auto& inst : picks) selections[i].selected.push_back(inst.id());
    });
    sp::save_selections(selections, out_path);
    return 0;
}

int run_eval_selection(const std::string& gt_path, const std::string& selections_path,
                       const std::string& out_path, const std::string& tsv_path) {
    auto gt = sp::load_ground_truth(gt_path);
    std::unordered_map<std::string, const std::vector<sp::GroundTruthSet>*> gt_by_id;
    for (const auto& [record_id, sets] : gt) gt_by_id[record_id] = &sets;

    auto selections = sp::load_selections(selections_path);
    std::vector<std::pair<std::string, sp::SelectionEvalReport>> per_record;
    std::vector<sp::SelectionEvalReport> reports;
    for (const auto& sel : selections) {
        auto it = gt_by_id.find(sel.record_id);
        if (it == gt_by_id.end())
            throw sp::ValidationError("record \"" + sel.record_id + "\" not in " + gt_path);
        std::vector<sp::Instance> system;
        for (const auto& id : sel.selected) system.push_back(sp::parse_instance_id(id));
        auto report = sp::evaluate_selection(system, *it->second);
        per_record.emplace_back(sel.record_id, report);
        reports.push_back(report);
    }
    if (reports.empty()) throw sp::ValidationError("no selections in " + selections_path);

    auto aggregate = sp::aggregate_reports(reports);
    sp::save_selection_report(aggregate, per_record, out_path);
    if (!tsv_path.empty()) sp::save_selection_report_tsv(aggregate, tsv_path);
    return 0;
}

int run_eval_rouge(const std::string& corpus_path, const std::string& selections_path,
                   const std::string& out_path, std::optional<int> word_cap_override,
                   bool stemming, const CommonOptions& common,
                   const sp::DatasetProfile& profile) {
    auto records = sp::load_corpus(corpus_path);
    auto selections = sp::load_selections(selections_path);
    sp::RougeConfig config;
    config.stemming = stemming;
    config.word_limit = word_cap_override ? *word_cap_override : profile.word_cap;
    auto report = sp::evaluate_rouge_run(selections, records, config);
    sp::save_rouge_report(report, out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Content selection over sentence singletons and pairs"};
    app.require_subcommand(1);

    int exit_code = 0;
    std::function<int()> action;

    // --- oracle ---
    {
        auto* cmd = app.add_subcommand("oracle", "Derive ground-truth singleton/pair sets");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto stats = std::make_shared<std::string>();
        auto stemming = std::make_shared<bool>(false);
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--out", *out, "Output ground-truth jsonl")->required();
        cmd->add_option("--stats", *stats, "Also write aggregate statistics JSON");
        cmd->add_flag("--stemming", *stemming, "Stem tokens for similarity and overlap");
        add_common(cmd, *common, /*with_profile=*/false);
        cmd->callback([=, &action] {
            action = [=] { return run_oracle(*corpus, *out, *stats, *stemming, *common); };
        });
    }

    // --- stats ---
    {
        auto* cmd = app.add_subcommand("stats", "Emit ground-truth statistics as CSV");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto stemming = std::make_shared<bool>(false);
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--out", *out, "Output CSV")->required();
        cmd->add_flag("--stemming", *stemming, "Stem tokens for similarity and overlap");
        add_common(cmd, *common, /*with_profile=*/false);
        cmd->callback([=, &action] {
            action = [=] { return run_stats(*corpus, *out, *stemming, *common); };
        });
    }

    // --- candidates ---
    {
        auto* cmd = app.add_subcommand("candidates", "Enumerate and label candidate instances");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto gt = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto ratio = std::make_shared<int>(0);
        auto max_sentences = std::make_shared<int>(-1);
        auto top_k = std::make_shared<int>(-1);
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--gt", *gt, "Ground-truth jsonl for labels (omit for unlabeled runs)");
        cmd->add_option("--out", *out, "Output instance-jsonl")->required();
        cmd->add_option("--downsample-ratio", *ratio,
                        "Negatives kept per positive (0 disables downsampling)");
        cmd->add_option("--max-sentences", *max_sentences,
                        "Single-doc enumeration cap (default from profile)");
        cmd->add_option("--top-k", *top_k, "Multi-doc pooling depth (default from profile)");
        add_common(cmd, *common);
        cmd->callback([=, &action] {
            action = [=] {
                sp::DatasetProfile profile = sp::dataset_profile(common->profile);
                if (*max_sentences > 0) profile.max_candidate_sentences = *max_sentences;
                if (*top_k > 0) profile.top_k = *top_k;
                return run_candidates(*corpus, *gt, *out, *ratio, *common, profile);
            };
        });
    }

    // --- featurize ---
    {
        auto* cmd = app.add_subcommand("featurize", "Compute dense instance features");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto instances = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto idf_in = std::make_shared<std::string>();
        auto idf_out = std::make_shared<std::string>();
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--instances", *instances, "Instance-jsonl to featurize")->required();
        cmd->add_option("--out", *out, "Output feature TSV")->required();
        cmd->add_option("--idf", *idf_in, "Load an idf table instead of fitting on the corpus");
        cmd->add_option("--idf-out", *idf_out, "Save the idf table used");
        add_common(cmd, *common);
        cmd->callback([=, &action] {
            action = [=] {
                sp::DatasetProfile profile = sp::dataset_profile(common->profile);
                return run_featurize(*corpus, *instances, *out, *idf_in, *idf_out, *common,
                                     profile);
            };
        });
    }

    // --- train ---
    {
        auto* cmd = app.add_subcommand("train", "Train the LambdaMART ranker");
        auto instances = std::make_shared<std::string>();
        auto features = std::make_shared<std::string>();
        auto model = std::make_shared<std::string>();
        auto config = std::make_shared<sp::TrainConfig>();
        cmd->add_option("--instances", *instances, "Labeled instance-jsonl")->required();
        cmd->add_option("--features", *features, "Feature TSV from featurize")->required();
        cmd->add_option("--model", *model, "Output model JSON")->required();
        cmd->add_option("--trees", config->num_trees, "Boosting rounds");
        cmd->add_option("--learning-rate", config->learning_rate, "Shrinkage per tree");
        cmd->add_option("--max-leaves", config->max_leaves, "Leaves per tree");
        cmd->add_option("--min-leaf", config->min_samples_leaf, "Min samples per leaf");
        cmd->add_option("--ndcg-k", config->ndcg_k, "NDCG truncation");
        cmd->add_option("--seed", config->seed, "RNG seed");
        cmd->callback([=, &action] {
            action = [=] { return run_train(*instances, *features, *model, *config); };
        });
    }

    // --- score ---
    {
        auto* cmd = app.add_subcommand("score", "Score feature rows with a trained model");
        auto model = std::make_shared<std::string>();
        auto features = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        cmd->add_option("--model", *model, "Model JSON")->required();
        cmd->add_option("--features", *features, "Feature TSV")->required();
        cmd->add_option("--out", *out, "Output score TSV")->required();
        cmd->callback([=, &action] {
            action = [=] { return run_score(*model, *features, *out); };
        });
    }

    // --- select ---
    {
        auto* cmd = app.add_subcommand("select", "MMR-select instances per record");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto scorer = std::make_shared<std::string>("lambdamart");
        auto model = std::make_shared<std::string>();
        auto scores = std::make_shared<std::string>();
        auto idf_in = std::make_shared<std::string>();
        auto budget = std::make_shared<int>(-1);
        auto budget_words = std::make_shared<int>(-1);
        auto lambda = std::make_shared<double>(-1.0);
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--out", *out, "Output selection jsonl")->required();
        cmd->add_option("--scorer", *scorer, "lambdamart or external-scores");
        cmd->add_option("--model", *model, "Model JSON (scorer=lambdamart)");
        cmd->add_option("--scores", *scores, "External score TSV (scorer=external-scores)");
        cmd->add_option("--idf", *idf_in, "Idf table (default: fit on the input corpus)");
        cmd->add_option("--budget", *budget, "Instances per record (default from profile)");
        cmd->add_option("--budget-words", *budget_words, "Stop before exceeding this many words");
        cmd->add_option("--lambda", *lambda, "MMR balance coefficient");
        add_common(cmd, *common);
        cmd->callback([=, &action] {
            action = [=] {
                sp::DatasetProfile profile = sp::dataset_profile(common->profile);
                return run_select(*corpus, *out, *scorer, *model, *scores, *idf_in,
                                  *budget > 0 ? std::optional<int>(*budget) : std::nullopt,
                                  *budget_words > 0 ? std::optional<int>(*budget_words)
                                                    : std::nullopt,
                                  *lambda >= 0.0 ? std::optional<double>(*lambda) : std::nullopt,
                                  *common, profile);
            };
        });
    }

    // --- baseline ---
    {
        auto* cmd = app.add_subcommand("baseline", "Run a classical extractive baseline");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto method = std::make_shared<std::string>();
        auto budget = std::make_shared<int>(-1);
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--out", *out, "Output selection jsonl")->required();
        cmd->add_option("--method", *method, "lead, sumbasic, klsum or lexrank")->required();
        cmd->add_option("--budget", *budget, "Sentences per record (default from profile)");
        add_common(cmd, *common);
        cmd->callback([=, &action] {
            action = [=] {
                sp::DatasetProfile profile = sp::dataset_profile(common->profile);
                return run_baseline(*corpus, *out, *method,
                                    *budget > 0 ? std::optional<int>(*budget) : std::nullopt,
                                    *common, profile);
            };
        });
    }

    // --- eval-selection ---
    {
        auto* cmd = app.add_subcommand("eval-selection",
                                       "Primary/secondary/all precision-recall-F1");
        auto gt = std::make_shared<std::string>();
        auto selections = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto tsv = std::make_shared<std::string>();
        cmd->add_option("--gt", *gt, "Ground-truth jsonl")->required();
        cmd->add_option("--selections", *selections, "Selection jsonl")->required();
        cmd->add_option("--out", *out, "Output report JSON")->required();
        cmd->add_option("--tsv", *tsv, "Also write the aggregate row as TSV");
        cmd->callback([=, &action] {
            action = [=] { return run_eval_selection(*gt, *selections, *out, *tsv); };
        });
    }

    // --- eval-rouge ---
    {
        auto* cmd = app.add_subcommand("eval-rouge", "ROUGE of assembled extracts");
        auto common = std::make_shared<CommonOptions>();
        auto corpus = std::make_shared<std::string>();
        auto selections = std::make_shared<std::string>();
        auto out = std::make_shared<std::string>();
        auto word_cap = std::make_shared<int>(-1);
        auto stemming = std::make_shared<bool>(false);
        cmd->add_option("--corpus", *corpus, "Input corpus-jsonl")->required();
        cmd->add_option("--selections", *selections, "Selection jsonl")->required();
        cmd->add_option("--out", *out, "Output report JSON")->required();
        cmd->add_option("--word-cap", *word_cap, "Extract word cap (default from profile)");
        cmd->add_flag("--stemming", *stemming, "Stem tokens before matching");
        add_common(cmd, *common);
        cmd->callback([=, &action] {
            action = [=] {
                sp::DatasetProfile profile = sp::dataset_profile(common->profile);
                return run_eval_rouge(*corpus, *selections, *out,
                                      *word_cap > 0 ? std::optional<int>(*word_cap)
                                                    : std::nullopt,
                                      *stemming, *common, profile);
            };
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return 1;
    }

    try {
        exit_code = action ? action() : 1;
    } catch (const sp::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const sp::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
