#pragma once

#include "singpair/oracle.hpp"
#include "singpair/types.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace singpair {

// A sentence singleton or an ordered sentence pair; the unit that is ranked,
// selected and evaluated. Pair order follows the pool order (appearance or
// document date).
struct Instance {
    SentenceRef first;
    std::optional<SentenceRef> second;

    bool is_pair() const { return second.has_value(); }
    std::string id() const {
        return second ? first.to_string() + "+" + second->to_string() : first.to_string();
    }
    bool operator==(const Instance&) const = default;
};

// Parses "doc:idx" or "doc:idx+doc:idx". Throws ValidationError on bad input.
Instance parse_instance_id(const std::string& id);

struct LabeledInstance {
    Instance instance;
    int label = 0; // 1 iff the instance is itself a ground-truth instance
    std::string query_id;
};

// An ordered sentence list with lookup by reference; the space candidates
// are enumerated over.
class SentencePool {
public:
    SentencePool() = default;
    explicit SentencePool(std::vector<Sentence> sentences);

    const std::vector<Sentence>& sentences() const { return sentences_; }
    std::size_t size() const { return sentences_.size(); }
    bool contains(const SentenceRef& ref) const { return index_.count(ref) != 0; }
    const Sentence& at(const SentenceRef& ref) const;
    std::size_t position(const SentenceRef& ref) const;

    // Pair members ordered by pool position.
    Instance make_pair(const SentenceRef& a, const SentenceRef& b) const;

private:
    std::vector<Sentence> sentences_;
    std::unordered_map<SentenceRef, std::size_t> index_;
};

// All N singletons (by position) followed by all N(N-1)/2 pairs in
// lexicographic position order. Throws ValidationError on an empty pool.
std::vector<Instance> enumerate_candidates(const SentencePool& pool);

// First top_k sentences of each document, concatenated in date order.
SentencePool pool_multidoc(const std::vector<Document>& docs, int top_k = 5);

// Binary relevance: 1 iff the instance equals a ground-truth set
// ({primary} for singletons, {primary, secondary} unordered for pairs).
std::vector<LabeledInstance> label_candidates(const std::vector<Instance>& candidates,
                                              const std::vector<GroundTruthSet>& gt_sets,
                                              const std::string& query_id);

// Keeps every positive; per query samples negatives without replacement down
// to ratio x positives, singletons and pairs balanced separately. Queries
// with no positives are dropped. Deterministic given (seed, query_id).
std::vector<LabeledInstance> downsample(const std::vector<LabeledInstance>& labeled,
                                        int ratio, std::uint64_t seed);

// instance-jsonl:
//   {"query_id": str, "instance_id": str, "kind": "singleton"|"pair", "label": 0|1}
void save_labeled_instances(const std::vector<LabeledInstance>& labeled, const std::string& path);
std::vector<LabeledInstance> load_labeled_instances(const std::string& path);

} // namespace singpair
