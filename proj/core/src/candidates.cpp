#include "singpair/candidates.hpp"

#include "singpair/corpus.hpp"
#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <map>

namespace singpair {

using nlohmann::json;

namespace {

SentenceRef parse_ref(const std::string& part) {
    auto colon = part.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == part.size())
        throw ValidationError("bad instance id part: \"" + part + "\"");
    SentenceRef ref;
    ref.doc_id = part.substr(0, colon);
    try {
        ref.sent_index = std::stoi(part.substr(colon + 1));
    } catch (const std::exception&) {
        throw ValidationError("bad sentence index in instance id: \"" + part + "\"");
    }
    return ref;
}

// Deterministic RNG stream for one (seed, query) pair.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased bounded draw by rejection.
    std::uint64_t below(std::uint64_t bound) {
        std::uint64_t threshold = (~bound + 1) % bound; // 2^64 mod bound
        for (;;) {
            std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

std::uint64_t fnv1a(std::uint64_t seed, const std::string& text) {
    std::uint64_t h = 14695981039346656037ull ^ seed;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// Fisher-Yates prefix sample of k indices out of n, without replacement.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, SplitMix64& rng) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k && i < n; ++i) {
        std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(std::min(n, k));
    return idx;
}

} // namespace

Instance parse_instance_id(const std::string& id) {
    Instance inst;
    auto plus = id.find('+');
    if (plus == std::string::npos) {
        inst.first = parse_ref(id);
    } else {
        inst.first = parse_ref(id.substr(0, plus));
        inst.second = parse_ref(id.substr(plus + 1));
        if (*inst.second == inst.first)
            throw ValidationError("pair members must differ: \"" + id + "\"");
    }
    return inst;
}

SentencePool::SentencePool(std::vector<Sentence> sentences) : sentences_(std::move(sentences)) {
    for (std::size_t i = 0; i < sentences_.size(); ++i) {
        if (!index_.emplace(sentences_[i].ref(), i).second)
            throw ValidationError("duplicate sentence reference in pool: " +
                                  sentences_[i].ref().to_string());
    }
}

const Sentence& SentencePool::at(const SentenceRef& ref) const {
    auto it = index_.find(ref);
    if (it == index_.end())
        throw ValidationError("sentence not in pool: " + ref.to_string());
    return sentences_[it->second];
}

std::size_t SentencePool::position(const SentenceRef& ref) const {
    auto it = index_.find(ref);
    if (it == index_.end())
        throw ValidationError("sentence not in pool: " + ref.to_string());
    return it->second;
}

Instance SentencePool::make_pair(const SentenceRef& a, const SentenceRef& b) const {
    if (a == b) throw ValidationError("pair members must differ: " + a.to_string());
    Instance inst;
    if (position(a) <= position(b)) {
        inst.first = a;
        inst.second = b;
    } else {
        inst.first = b;
        inst.second = a;
    }
    return inst;
}

std::vector<Instance> enumerate_candidates(const SentencePool& pool) {
    if (pool.size() == 0) throw ValidationError("enumerate_candidates: empty sentence pool");
    const auto& sentences = pool.sentences();
    std::vector<Instance> out;
    out.reserve(pool.size() + pool.size() * (pool.size() - 1) / 2);
    for (const auto& s : sentences) out.push_back(Instance{s.ref(), std::nullopt});
    for (std::size_t i = 0; i < sentences.size(); ++i)
        for (std::size_t j = i + 1; j < sentences.size(); ++j)
            out.push_back(Instance{sentences[i].ref(), sentences[j].ref()});
    return out;
}

SentencePool pool_multidoc(const std::vector<Document>& docs, int top_k) {
    if (docs.empty()) throw ValidationError("pool_multidoc: empty document list");
    if (top_k < 1) throw ValidationError("pool_multidoc: top_k must be >= 1");
    std::vector<Sentence> pooled;
    for (const auto& doc : sort_documents_by_date(docs)) {
        int take = std::min<int>(static_cast<int>(doc.sentences.size()), top_k);
        for (int i = 0; i < take; ++i) pooled.push_back(doc.sentences[i]);
    }
    return SentencePool(std::move(pooled));
}

std::vector<LabeledInstance> label_candidates(const std::vector<Instance>& candidates,
                                              const std::vector<GroundTruthSet>& gt_sets,
                                              const std::string& query_id) {
    // Ground-truth instances as unordered sentence sets.
    std::vector<std::pair<SentenceRef, std::optional<SentenceRef>>> targets;
    for (const auto& set : gt_sets) {
        if (set.secondary) {
            auto lo = std::min(set.primary, *set.secondary);
            auto hi = std::max(set.primary, *set.secondary);
            targets.emplace_back(lo, hi);
        } else {
            targets.emplace_back(set.primary, std::nullopt);
        }
    }

    std::vector<LabeledInstance> out;
    out.reserve(candidates.size());
    for (const auto& cand : candidates) {
        std::pair<SentenceRef, std::optional<SentenceRef>> key;
        if (cand.second) {
            key = {std::min(cand.first, *cand.second), std::max(cand.first, *cand.second)};
        } else {
            key = {cand.first, std::nullopt};
        }
        int label = std::find(targets.begin(), targets.end(), key) != targets.end() ? 1 : 0;
        out.push_back(LabeledInstance{cand, label, query_id});
    }
    return out;
}

std::vector<LabeledInstance> downsample(const std::vector<LabeledInstance>& labeled,
                                        int ratio, std::uint64_t seed) {
    if (ratio < 1) throw ValidationError("downsample: ratio must be >= 1");

    // Group by query, preserving first-appearance order of queries.
    std::vector<std::string> order;
    std::map<std::string, std::vector<const LabeledInstance*>> queries;
    for (const auto& item : labeled) {
        auto [it, inserted] = queries.try_emplace(item.query_id);
        if (inserted) order.push_back(item.query_id);
        it->second.push_back(&item);
    }

    std::vector<LabeledInstance> out;
    for (const auto& query_id : order) {
        const auto& items = queries[query_id];
        bool any_positive = std::any_of(items.begin(), items.end(),
                                        [](const LabeledInstance* i) { return i->label == 1; });
        if (!any_positive) continue; // all-negative query carries no ranking signal

        SplitMix64 rng(fnv1a(seed, query_id));
        std::vector<const LabeledInstance*> kept;
        for (bool pair_kind : {false, true}) {
            std::vector<const LabeledInstance*> positives, negatives;
            for (const auto* item : items) {
                if (item->instance.is_pair() != pair_kind) continue;
                (item->label == 1 ? positives : negatives).push_back(item);
            }
            std::size_t quota = positives.size() * static_cast<std::size_t>(ratio);
            for (const auto* p : positives) kept.push_back(p);
            for (std::size_t i : sample_indices(negatives.size(), quota, rng))
                kept.push_back(negatives[i]);
        }
        // Restore candidate order within the query.
        std::sort(kept.begin(), kept.end(), [&](const LabeledInstance* a, const LabeledInstance* b) {
            return a - b < 0;
        });
        for (const auto* item : kept) out.push_back(*item);
    }
    return out;
}

void save_labeled_instances(const std::vector<LabeledInstance>& labeled, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write instance file: " + path);
    for (const auto& item : labeled) {
        json j;
        j["query_id"] = item.query_id;
        j["instance_id"] = item.instance.id();
        j["kind"] = item.instance.is_pair() ? "pair" : "singleton";
        j["label"] = item.label;
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<LabeledInstance> load_labeled_instances(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file: " + path);
    std::vector<LabeledInstance> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::string where = path + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(where + ": malformed JSON: " + e.what());
        }
        LabeledInstance item;
        item.query_id = j.at("query_id").get<std::string>();
        item.instance = parse_instance_id(j.at("instance_id").get<std::string>());
        item.label = j.at("label").get<int>();
        if (item.label != 0 && item.label != 1)
            throw ValidationError(where + ": label must be 0 or 1");
        std::string kind = j.at("kind").get<std::string>();
        if ((kind == "pair") != item.instance.is_pair())
            throw ValidationError(where + ": kind does not match instance_id");
        out.push_back(std::move(item));
    }
    return out;
}

} // namespace singpair
