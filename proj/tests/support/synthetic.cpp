#include "support/synthetic.hpp"

#include "singpair/textproc.hpp"

#include <algorithm>
#include <string>

namespace singpair::testing {

std::uint64_t TestRng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t TestRng::below(std::uint64_t bound) {
    std::uint64_t threshold = (~bound + 1) % bound;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold) return r % bound;
    }
}

double TestRng::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

const std::vector<std::string> kGlue = {"the", "of", "and", "in", "to"};

std::string join(const std::vector<std::string>& tokens) {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t;
    }
    return out;
}

// Sentence k of record r: unique words interleaved with glue, plus theme
// words whose count marks the first five sentences as topically central.
std::vector<std::string> make_sentence_tokens(int record, int k, TestRng& rng) {
    int uniques = 6 + static_cast<int>(rng.below(3));
    int theme_count = k < 5 ? 3 : 1;
    std::string theme = "theme" + std::to_string(record);

    std::vector<std::string> tokens;
    for (int u = 0; u < uniques; ++u) {
        tokens.push_back("w" + std::to_string(record) + "s" + std::to_string(k) + "u" +
                         std::to_string(u));
        if (u + 1 < uniques) tokens.push_back(kGlue[rng.below(kGlue.size())]);
    }
    for (int t = 0; t < theme_count; ++t)
        tokens.insert(tokens.begin() + static_cast<long>(rng.below(tokens.size() + 1)), theme);
    tokens.push_back(".");
    return tokens;
}

// Contiguous span of `take` unique words from the source sentence, glue and
// theme words included as they appear.
std::vector<std::string> copy_span(const std::vector<std::string>& source, int take,
                                   int record, TestRng& rng) {
    std::string unique_prefix = "w" + std::to_string(record) + "s";
    std::vector<int> unique_positions;
    for (int i = 0; i < static_cast<int>(source.size()); ++i)
        if (source[i].rfind(unique_prefix, 0) == 0) unique_positions.push_back(i);

    take = std::min<int>(take, static_cast<int>(unique_positions.size()));
    int max_start = static_cast<int>(unique_positions.size()) - take;
    int start = static_cast<int>(rng.below(static_cast<std::uint64_t>(max_start) + 1));
    int lo = unique_positions[start];
    int hi = unique_positions[start + take - 1];

    std::vector<std::string> out;
    for (int i = lo; i <= hi; ++i) {
        if (source[i].rfind("theme", 0) == 0) continue; // keep themes out of summaries
        out.push_back(source[i]);
    }
    return out;
}

} // namespace

std::vector<CorpusRecord> make_synthetic_corpus(const SyntheticOptions& options) {
    TestRng rng(options.seed * 0x9e3779b97f4a7c15ull + 0x51ed2701);
    std::vector<CorpusRecord> records;
    records.reserve(options.records);

    for (int r = 0; r < options.records; ++r) {
        CorpusRecord record;
        record.record_id = "r" + std::to_string(r);

        Document doc;
        doc.doc_id = "d" + std::to_string(r);
        int n_sentences = options.min_sentences +
                          static_cast<int>(rng.below(
                              static_cast<std::uint64_t>(options.max_sentences -
                                                         options.min_sentences + 1)));
        std::vector<std::vector<std::string>> sentence_tokens;
        for (int k = 0; k < n_sentences; ++k) {
            sentence_tokens.push_back(make_sentence_tokens(r, k, rng));
            Sentence sent;
            sent.doc_id = doc.doc_id;
            sent.sent_index = k;
            sent.text = join(sentence_tokens.back());
            sent.tokens = tokenize(sent.text);
            doc.sentences.push_back(std::move(sent));
        }
        record.documents.push_back(std::move(doc));

        ReferenceSummary summary;
        for (int s = 0; s < options.summary_sentences; ++s) {
            double roll = rng.uniform();
            // The opening summary sentence fuses more often, like human
            // abstracts do.
            double p_pair = s == 0 ? 0.50 : 0.15;
            double p_multi = s == 0 ? 0.10 : 0.06;
            double p_noise = s == 0 ? 0.10 : 0.09;

            std::vector<std::string> tokens;
            if (roll < p_noise) {
                for (int i = 0; i < 4; ++i)
                    tokens.push_back("novel" + std::to_string(r) + "q" + std::to_string(s) +
                                     "i" + std::to_string(i));
            } else if (roll < p_noise + p_pair + p_multi) {
                bool multi = roll >= p_noise + p_pair;
                int count = multi ? 3 : 2;
                std::vector<int> sources;
                while (static_cast<int>(sources.size()) < count) {
                    int i = static_cast<int>(rng.below(5));
                    if (std::find(sources.begin(), sources.end(), i) == sources.end())
                        sources.push_back(i);
                }
                std::sort(sources.begin(), sources.end());
                int takes[3] = {5, 3, 2}; // descending share keeps pick order fixed
                for (int c = 0; c < count; ++c) {
                    auto span = copy_span(sentence_tokens[sources[c]], takes[c], r, rng);
                    tokens.insert(tokens.end(), span.begin(), span.end());
                    if (c + 1 < count) tokens.push_back(kGlue[rng.below(kGlue.size())]);
                }
            } else {
                int source = static_cast<int>(rng.below(5));
                tokens = copy_span(sentence_tokens[source], 5, r, rng);
            }
            summary.texts.push_back(join(tokens));
            summary.sentences.push_back(tokenize(summary.texts.back()));
        }
        record.summary = std::move(summary);
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace singpair::testing
