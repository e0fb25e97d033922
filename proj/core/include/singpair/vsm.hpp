#pragma once

#include "singpair/candidates.hpp"
#include "singpair/textproc.hpp"
#include "singpair/types.hpp"

#include <map>
#include <string>
#include <vector>

namespace singpair {

// Document frequencies for n-grams over a corpus; idf(g) = ln(doc_count/df)
// with unseen df floored at 1.
struct IdfTable {
    long doc_count = 0;
    int n_min = 1;
    int n_max = 2;
    std::map<std::string, long> df;

    double idf(const std::string& gram) const;
};

struct SparseVector {
    std::map<std::string, double> entries; // no zero weights stored

    double norm() const;
    bool empty() const { return entries.empty(); }
};

struct InstanceFeatures {
    SparseVector vector;
    double position_first = 0.0;
    double position_second = 0.0; // equals position_first for singletons
    double centrality = 0.0;
    double kind_flag = 0.0; // 0 singleton, 1 pair
};

IdfTable fit_idf(const std::vector<CorpusRecord>& records, const StopwordList& stopwords,
                 int n_min = 1, int n_max = 2);

void save_idf(const IdfTable& idf, const std::string& path);
IdfTable load_idf(const std::string& path);

// tf x idf over n-grams of the token list; stopword unigrams excluded.
SparseVector sentence_vector(const std::vector<std::string>& tokens, const IdfTable& idf,
                             const StopwordList& stopwords);

// Component-wise mean of the document's sentence vectors.
SparseVector document_vector(const Document& doc, const IdfTable& idf,
                             const StopwordList& stopwords);

// Singleton: its sentence vector; pair: mean of the two sentence vectors.
SparseVector instance_vector(const Instance& instance, const SentencePool& pool,
                             const IdfTable& idf, const StopwordList& stopwords);

// Cosine similarity; 0 when either vector is empty.
double cosine(const SparseVector& a, const SparseVector& b);

InstanceFeatures featurize_instance(const Instance& instance, const SentencePool& pool,
                                    const SparseVector& doc_vector, const IdfTable& idf,
                                    const StopwordList& stopwords, int doc_length);

// Fixed-width input for the tree ranker: [centrality, position_first,
// position_second, kind_flag, tfidf_sum, tfidf_mean, top-20 tf-idf weights
// (zero padded), content word count].
inline constexpr int kDenseTopWeights = 20;
inline constexpr int kDenseFeatureWidth = 6 + kDenseTopWeights + 1;

std::vector<double> dense_features(const InstanceFeatures& features,
                                   const Instance& instance, const SentencePool& pool,
                                   const StopwordList& stopwords);

} // namespace singpair
