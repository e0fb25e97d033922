#pragma once

#include "singpair/textproc.hpp"
#include "singpair/types.hpp"

#include <string>
#include <vector>

namespace singpair {

// Reads corpus-jsonl: one record per line,
//   {"record_id": str,
//    "documents": [{"doc_id": str, "date": str|null, "sentences": [str,...]}],
//    "summary": [str,...] | null,
//    "extra_references": [[str,...],...] | null}
// Whitespace-only sentences are dropped; kept sentences are tokenized.
// Throws ValidationError naming the line on malformed input, duplicate
// record_id, or (when require_summary) a record without a summary.
std::vector<CorpusRecord> load_corpus(const std::string& path,
                                      bool require_summary = false,
                                      const TokenizerConfig& tokenizer = {});

// Writes records back in the same jsonl schema (original sentence strings).
void save_corpus(const std::vector<CorpusRecord>& records, const std::string& path);

// Ascending (date, doc_id); documents without a date sort after dated ones.
std::vector<Document> sort_documents_by_date(std::vector<Document> docs);

// First min(|doc|, max_per_doc) sentences of each document, concatenated in
// date order. Sentences keep their original doc_id and sent_index.
Document build_mega_document(const std::vector<Document>& docs, int max_per_doc = 20);

} // namespace singpair
