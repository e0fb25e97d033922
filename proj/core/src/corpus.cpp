#include "singpair/corpus.hpp"

#include "singpair/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <unordered_set>

namespace singpair {

using nlohmann::json;

namespace {

bool whitespace_only(const std::string& s) {
    return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c) != 0; });
}

ReferenceSummary parse_summary(const json& arr, const TokenizerConfig& tokenizer,
                               const std::string& where) {
    if (!arr.is_array() || arr.empty())
        throw ValidationError(where + ": summary must be a non-empty array of strings");
    ReferenceSummary summary;
    for (const auto& s : arr) {
        if (!s.is_string()) throw ValidationError(where + ": summary sentence must be a string");
        summary.texts.push_back(s.get<std::string>());
        summary.sentences.push_back(tokenize(summary.texts.back(), tokenizer));
    }
    return summary;
}

CorpusRecord parse_record(const json& j, const TokenizerConfig& tokenizer,
                          const std::string& where) {
    if (!j.is_object()) throw ValidationError(where + ": record must be a JSON object");
    CorpusRecord rec;
    if (!j.contains("record_id") || !j["record_id"].is_string())
        throw ValidationError(where + ": missing string field \"record_id\"");
    rec.record_id = j["record_id"].get<std::string>();

    if (!j.contains("documents") || !j["documents"].is_array() || j["documents"].empty())
        throw ValidationError(where + ": \"documents\" must be a non-empty array");
    for (const auto& dj : j["documents"]) {
        Document doc;
        if (!dj.contains("doc_id") || !dj["doc_id"].is_string())
            throw ValidationError(where + ": document missing string field \"doc_id\"");
        doc.doc_id = dj["doc_id"].get<std::string>();
        if (doc.doc_id.find('+') != std::string::npos)
            throw ValidationError(where + ": doc_id must not contain '+': " + doc.doc_id);
        if (dj.contains("date") && !dj["date"].is_null()) {
            if (!dj["date"].is_string())
                throw ValidationError(where + ": document date must be a string or null");
            doc.date = dj["date"].get<std::string>();
        }
        if (!dj.contains("sentences") || !dj["sentences"].is_array())
            throw ValidationError(where + ": document missing array field \"sentences\"");
        int index = 0;
        for (const auto& sj : dj["sentences"]) {
            if (!sj.is_string()) throw ValidationError(where + ": sentence must be a string");
            std::string text = sj.get<std::string>();
            int sent_index = index++;
            if (whitespace_only(text)) continue;
            Sentence sent;
            sent.doc_id = doc.doc_id;
            sent.sent_index = sent_index;
            sent.text = std::move(text);
            sent.tokens = tokenize(sent.text, tokenizer);
            doc.sentences.push_back(std::move(sent));
        }
        rec.documents.push_back(std::move(doc));
    }

    if (j.contains("summary") && !j["summary"].is_null())
        rec.summary = parse_summary(j["summary"], tokenizer, where);

    if (j.contains("extra_references") && !j["extra_references"].is_null()) {
        if (!j["extra_references"].is_array())
            throw ValidationError(where + ": \"extra_references\" must be an array");
        for (const auto& r : j["extra_references"])
            rec.extra_references.push_back(parse_summary(r, tokenizer, where));
    }
    return rec;
}

} // namespace

std::vector<CorpusRecord> load_corpus(const std::string& path, bool require_summary,
                                      const TokenizerConfig& tokenizer) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open corpus file: " + path);

    std::vector<CorpusRecord> records;
    std::unordered_set<std::string> seen_ids;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (whitespace_only(line)) continue;
        std::string where = path + ":" + std::to_string(line_no);
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ValidationError(where + ": malformed JSON: " + e.what());
        }
        CorpusRecord rec = parse_record(j, tokenizer, where);
        if (!seen_ids.insert(rec.record_id).second)
            throw ValidationError(where + ": duplicate record_id \"" + rec.record_id + "\"");
        if (require_summary && !rec.summary)
            throw ValidationError(where + ": record \"" + rec.record_id + "\" has no summary");
        records.push_back(std::move(rec));
    }
    return records;
}

void save_corpus(const std::vector<CorpusRecord>& records, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write corpus file: " + path);
    for (const auto& rec : records) {
        json j;
        j["record_id"] = rec.record_id;
        json docs = json::array();
        for (const auto& doc : rec.documents) {
            json dj;
            dj["doc_id"] = doc.doc_id;
            dj["date"] = doc.date ? json(*doc.date) : json(nullptr);
            json sents = json::array();
            for (const auto& s : doc.sentences) sents.push_back(s.text);
            dj["sentences"] = std::move(sents);
            docs.push_back(std::move(dj));
        }
        j["documents"] = std::move(docs);
        if (rec.summary) {
            j["summary"] = rec.summary->texts;
        } else {
            j["summary"] = nullptr;
        }
        if (!rec.extra_references.empty()) {
            json refs = json::array();
            for (const auto& r : rec.extra_references) refs.push_back(r.texts);
            j["extra_references"] = std::move(refs);
        } else {
            j["extra_references"] = nullptr;
        }
        out << j.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path);
}

std::vector<Document> sort_documents_by_date(std::vector<Document> docs) {
    std::stable_sort(docs.begin(), docs.end(), [](const Document& a, const Document& b) {
        if (a.date.has_value() != b.date.has_value()) return a.date.has_value();
        if (a.date && b.date && *a.date != *b.date) return *a.date < *b.date;
        return a.doc_id < b.doc_id;
    });
    return docs;
}

Document build_mega_document(const std::vector<Document>& docs, int max_per_doc) {
    if (docs.empty()) throw ValidationError("build_mega_document: empty document list");
    if (max_per_doc < 1) throw ValidationError("build_mega_document: max_per_doc must be >= 1");
    Document mega;
    mega.doc_id = "mega";
    for (const auto& doc : sort_documents_by_date(docs)) {
        int take = std::min<int>(static_cast<int>(doc.sentences.size()), max_per_doc);
        for (int i = 0; i < take; ++i) mega.sentences.push_back(doc.sentences[i]);
    }
    return mega;
}

} // namespace singpair
