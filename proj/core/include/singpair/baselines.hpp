#pragma once

#include "singpair/candidates.hpp"
#include "singpair/textproc.hpp"
#include "singpair/types.hpp"
#include "singpair/vsm.hpp"

#include <vector>

namespace singpair {

struct BaselineConfig {
    int n_sentences = 1;
    double lexrank_damping = 0.85;   // probability of following an edge
    double lexrank_threshold = 0.1;  // min cosine for a graph edge
    double lexrank_tolerance = 1e-6; // L1 convergence bound
};

// First min(n, |doc|) sentences as singletons.
std::vector<Instance> lead(const Document& doc, int n);

// Frequency-driven selection: each round picks the best-scoring sentence
// containing the currently most probable content word, then squares the
// probabilities of the picked sentence's words.
std::vector<Instance> sumbasic(const Document& doc, int n, const StopwordList& stopwords);

// Greedily adds the sentence minimizing KL(doc || summary+candidate) over
// content-word unigram distributions.
std::vector<Instance> klsum(const Document& doc, int n, const StopwordList& stopwords);

// Damped random walk over the cosine(tf-idf) sentence graph; top-n sentences
// by stationary probability.
std::vector<Instance> lexrank(const Document& doc, int n, const IdfTable& idf,
                              const StopwordList& stopwords, const BaselineConfig& config = {});

// Stationary scores, exposed for inspection; sums to 1.
std::vector<double> lexrank_scores(const Document& doc, const IdfTable& idf,
                                   const StopwordList& stopwords,
                                   const BaselineConfig& config = {});

} // namespace singpair
