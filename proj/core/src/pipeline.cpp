#include "singpair/pipeline.hpp"

#include "singpair/errors.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace singpair {

DatasetProfile dataset_profile(const std::string& name) {
    DatasetProfile profile;
    profile.name = name;
    if (name == "cnndm") {
        profile.budget_instances = 4;
        profile.word_cap = 100;
    } else if (name == "xsum") {
        profile.budget_instances = 1;
        profile.word_cap = 40;
    } else if (name == "duc04") {
        profile.budget_instances = 5;
        profile.word_cap = 100;
        profile.top_k = 5;
    } else {
        throw ValidationError("unknown profile \"" + name +
                              "\" (expected cnndm, xsum or duc04)");
    }
    return profile;
}

SentencePool candidate_pool(const CorpusRecord& record, const DatasetProfile& profile) {
    if (record.documents.empty())
        throw ValidationError("candidate_pool: record \"" + record.record_id +
                              "\" has no documents");
    if (record.is_multidoc()) return pool_multidoc(record.documents, profile.top_k);
    const Document& doc = record.documents.front();
    std::vector<Sentence> prefix(
        doc.sentences.begin(),
        doc.sentences.begin() +
            std::min<std::size_t>(doc.sentences.size(),
                                  static_cast<std::size_t>(profile.max_candidate_sentences)));
    return SentencePool(std::move(prefix));
}

RecordContext make_record_context(const CorpusRecord& record, const DatasetProfile& profile,
                                  const IdfTable& idf, const StopwordList& stopwords) {
    RecordContext context;
    context.pool = candidate_pool(record, profile);
    if (record.is_multidoc()) {
        Document mega = build_mega_document(record.documents, profile.mega_max_per_doc);
        context.doc_vector = document_vector(mega, idf, stopwords);
        context.doc_length = static_cast<int>(context.pool.size());
    } else {
        context.doc_vector = document_vector(record.documents.front(), idf, stopwords);
        context.doc_length = static_cast<int>(record.documents.front().sentences.size());
    }
    return context;
}

std::vector<std::vector<double>> featurize_record(const RecordContext& context,
                                                  const std::vector<Instance>& instances,
                                                  const IdfTable& idf,
                                                  const StopwordList& stopwords) {
    std::vector<std::vector<double>> out;
    out.reserve(instances.size());
    for (const auto& instance : instances) {
        InstanceFeatures features = featurize_instance(instance, context.pool,
                                                       context.doc_vector, idf, stopwords,
                                                       context.doc_length);
        out.push_back(dense_features(features, instance, context.pool, stopwords));
    }
    return out;
}

RecordSelection select_record(const CorpusRecord& record, const RecordContext& context,
                              const std::vector<Instance>& candidates,
                              const std::map<std::string, double>& raw_scores,
                              const IdfTable& idf, const StopwordList& stopwords,
                              const DatasetProfile& profile, std::optional<int> budget_words) {
    SelectionConfig config;
    config.lambda = profile.mmr_lambda;
    config.budget_instances = profile.budget_instances;
    config.budget_words = budget_words;

    SelectionResult result = mmr_select(candidates, normalize_scores(raw_scores), context.pool,
                                        idf, stopwords, config);
    RecordSelection selection;
    selection.record_id = record.record_id;
    for (const auto& instance : result.selected) selection.selected.push_back(instance.id());
    selection.trace = std::move(result.trace);
    return selection;
}

void parallel_for(int jobs, std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    if (jobs < 1) jobs = 1;
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

} // namespace singpair
