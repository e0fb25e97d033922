#include "singpair/vsm.hpp"

#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <unordered_set>

namespace singpair {

using nlohmann::json;

double IdfTable::idf(const std::string& gram) const {
    auto it = df.find(gram);
    long f = it == df.end() ? 1 : it->second;
    return std::log(static_cast<double>(doc_count) / static_cast<double>(f));
}

double SparseVector::norm() const {
    double sq = 0.0;
    for (const auto& [gram, w] : entries) sq += w * w;
    return std::sqrt(sq);
}

namespace {

bool keep_unigram(const std::string& token, const StopwordList& stopwords) {
    return !stopwords.contains(token);
}

void add_grams(const std::vector<std::string>& tokens, int n_min, int n_max,
               const StopwordList& stopwords, std::unordered_set<std::string>& sink) {
    for (int n = n_min; n <= n_max; ++n) {
        for (const auto& [gram, count] : ngrams(tokens, n)) {
            if (n == 1 && !keep_unigram(gram, stopwords)) continue;
            sink.insert(gram);
        }
    }
}

} // namespace

IdfTable fit_idf(const std::vector<CorpusRecord>& records, const StopwordList& stopwords,
                 int n_min, int n_max) {
    if (records.empty()) throw ValidationError("fit_idf: empty corpus");
    if (n_min < 1 || n_max < n_min) throw ValidationError("fit_idf: bad n-gram range");
    IdfTable table;
    table.n_min = n_min;
    table.n_max = n_max;
    for (const auto& record : records) {
        for (const auto& doc : record.documents) {
            ++table.doc_count;
            std::unordered_set<std::string> grams;
            for (const auto& sent : doc.sentences)
                add_grams(sent.tokens, n_min, n_max, stopwords, grams);
            for (const auto& gram : grams) ++table.df[gram];
        }
    }
    return table;
}

void save_idf(const IdfTable& idf, const std::string& path) {
    json j;
    j["doc_count"] = idf.doc_count;
    j["n_range"] = json::array({idf.n_min, idf.n_max});
    json df = json::object();
    for (const auto& [gram, count] : idf.df) df[gram] = count;
    j["df"] = std::move(df);
    std::ofstream out(path);
    if (!out) throw IoError("cannot write idf file: " + path);
    out << j.dump() << '\n';
}

IdfTable load_idf(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open idf file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": malformed JSON: " + std::string(e.what()));
    }
    IdfTable table;
    table.doc_count = j.at("doc_count").get<long>();
    table.n_min = j.at("n_range").at(0).get<int>();
    table.n_max = j.at("n_range").at(1).get<int>();
    for (const auto& [gram, count] : j.at("df").items()) {
        long c = count.get<long>();
        if (c < 1 || c > table.doc_count)
            throw ValidationError(path + ": df out of range for \"" + gram + "\"");
        table.df[gram] = c;
    }
    return table;
}

SparseVector sentence_vector(const std::vector<std::string>& tokens, const IdfTable& idf,
                             const StopwordList& stopwords) {
    SparseVector vec;
    for (int n = idf.n_min; n <= idf.n_max; ++n) {
        for (const auto& [gram, count] : ngrams(tokens, n)) {
            if (n == 1 && !keep_unigram(gram, stopwords)) continue;
            double w = static_cast<double>(count) * idf.idf(gram);
            if (w > 0.0) vec.entries[gram] += w;
        }
    }
    return vec;
}

namespace {

SparseVector mean_of(const std::vector<SparseVector>& vectors) {
    SparseVector mean;
    if (vectors.empty()) return mean;
    for (const auto& v : vectors)
        for (const auto& [gram, w] : v.entries) mean.entries[gram] += w;
    double n = static_cast<double>(vectors.size());
    for (auto it = mean.entries.begin(); it != mean.entries.end();) {
        it->second /= n;
        if (it->second == 0.0) {
            it = mean.entries.erase(it);
        } else {
            ++it;
        }
    }
    return mean;
}

} // namespace

SparseVector document_vector(const Document& doc, const IdfTable& idf,
                             const StopwordList& stopwords) {
    if (doc.sentences.empty()) throw ValidationError("document_vector: empty document");
    std::vector<SparseVector> vectors;
    vectors.reserve(doc.sentences.size());
    for (const auto& sent : doc.sentences)
        vectors.push_back(sentence_vector(sent.tokens, idf, stopwords));
    return mean_of(vectors);
}

SparseVector instance_vector(const Instance& instance, const SentencePool& pool,
                             const IdfTable& idf, const StopwordList& stopwords) {
    SparseVector first = sentence_vector(pool.at(instance.first).tokens, idf, stopwords);
    if (!instance.second) return first;
    SparseVector second = sentence_vector(pool.at(*instance.second).tokens, idf, stopwords);
    return mean_of({first, second});
}

double cosine(const SparseVector& a, const SparseVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    const SparseVector& small = a.entries.size() <= b.entries.size() ? a : b;
    const SparseVector& large = a.entries.size() <= b.entries.size() ? b : a;
    double dot = 0.0;
    for (const auto& [gram, w] : small.entries) {
        auto it = large.entries.find(gram);
        if (it != large.entries.end()) dot += w * it->second;
    }
    if (dot == 0.0) return 0.0;
    return dot / (a.norm() * b.norm());
}

InstanceFeatures featurize_instance(const Instance& instance, const SentencePool& pool,
                                    const SparseVector& doc_vector, const IdfTable& idf,
                                    const StopwordList& stopwords, int doc_length) {
    if (doc_length < 1) throw ValidationError("featurize_instance: doc_length must be >= 1");
    InstanceFeatures f;
    f.vector = instance_vector(instance, pool, idf, stopwords);
    double denom = static_cast<double>(std::max(1, doc_length - 1));
    f.position_first = static_cast<double>(pool.at(instance.first).sent_index) / denom;
    f.position_second = instance.second
                            ? static_cast<double>(pool.at(*instance.second).sent_index) / denom
                            : f.position_first;
    f.centrality = cosine(f.vector, doc_vector);
    f.kind_flag = instance.is_pair() ? 1.0 : 0.0;
    return f;
}

std::vector<double> dense_features(const InstanceFeatures& features,
                                   const Instance& instance, const SentencePool& pool,
                                   const StopwordList& stopwords) {
    std::vector<double> out;
    out.reserve(kDenseFeatureWidth);
    out.push_back(features.centrality);
    out.push_back(features.position_first);
    out.push_back(features.position_second);
    out.push_back(features.kind_flag);

    double sum = 0.0;
    std::vector<double> weights;
    weights.reserve(features.vector.entries.size());
    for (const auto& [gram, w] : features.vector.entries) {
        sum += w;
        weights.push_back(w);
    }
    out.push_back(sum);
    out.push_back(weights.empty() ? 0.0 : sum / static_cast<double>(weights.size()));

    std::sort(weights.begin(), weights.end(), std::greater<>());
    for (int i = 0; i < kDenseTopWeights; ++i)
        out.push_back(i < static_cast<int>(weights.size()) ? weights[i] : 0.0);

    long content = static_cast<long>(
        content_words(pool.at(instance.first).tokens, stopwords).size());
    if (instance.second)
        content += static_cast<long>(
            content_words(pool.at(*instance.second).tokens, stopwords).size());
    out.push_back(static_cast<double>(content));
    return out;
}

} // namespace singpair
