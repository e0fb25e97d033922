#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace singpair {

// Identity of a sentence within its original document. Sentences keep this
// identity when they are pooled into mega-documents or candidate pools.
struct SentenceRef {
    std::string doc_id;
    int sent_index = 0;

    bool operator==(const SentenceRef&) const = default;
    auto operator<=>(const SentenceRef&) const = default;

    std::string to_string() const { return doc_id + ":" + std::to_string(sent_index); }
};

struct Sentence {
    std::string doc_id;
    int sent_index = 0;
    std::vector<std::string> tokens;
    std::string text;

    SentenceRef ref() const { return {doc_id, sent_index}; }
    bool operator==(const Sentence&) const = default;
};

struct Document {
    std::string doc_id;
    std::vector<Sentence> sentences;
    std::optional<std::string> date; // ISO-8601; lexicographic order == chronological order

    bool operator==(const Document&) const = default;
};

struct ReferenceSummary {
    std::vector<std::string> texts;                    // original sentence strings
    std::vector<std::vector<std::string>> sentences;   // tokenized, parallel to texts

    bool operator==(const ReferenceSummary&) const = default;
};

struct CorpusRecord {
    std::string record_id;
    std::vector<Document> documents;
    std::optional<ReferenceSummary> summary;
    std::vector<ReferenceSummary> extra_references;

    bool is_multidoc() const { return documents.size() > 1; }
    bool operator==(const CorpusRecord&) const = default;
};

} // namespace singpair

template <>
struct std::hash<singpair::SentenceRef> {
    std::size_t operator()(const singpair::SentenceRef& r) const noexcept {
        // FNV-1a over doc_id bytes then the index
        std::uint64_t h = 14695981039346656037ull;
        for (unsigned char c : r.doc_id) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= static_cast<std::uint64_t>(r.sent_index) + 0x9e3779b97f4a7c15ull;
        h *= 1099511628211ull;
        return static_cast<std::size_t>(h);
    }
};
