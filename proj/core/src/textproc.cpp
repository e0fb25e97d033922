#include "singpair/textproc.hpp"

#include "singpair/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

namespace singpair {

namespace {

bool is_word_char(unsigned char c) {
    // Bytes >= 0x80 (UTF-8 continuation/lead bytes) are treated as letters.
    return std::isalnum(c) != 0 || c >= 0x80;
}

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

} // namespace

StopwordList::StopwordList(const std::vector<std::string>& words) {
    for (const auto& w : words) {
        if (w.empty()) continue;
        std::string lower = w;
        std::transform(lower.begin(), lower.end(), lower.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        words_.insert(std::move(lower));
    }
}

const StopwordList& StopwordList::english() {
    static const StopwordList list{std::vector<std::string>{
        "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your",
        "yours", "yourself", "yourselves", "he", "him", "his", "himself", "she", "her",
        "hers", "herself", "it", "its", "itself", "they", "them", "their", "theirs",
        "themselves", "what", "which", "who", "whom", "this", "that", "these", "those",
        "am", "is", "are", "was", "were", "be", "been", "being", "have", "has", "had",
        "having", "do", "does", "did", "doing", "a", "an", "the", "and", "but", "if",
        "or", "because", "as", "until", "while", "of", "at", "by", "for", "with",
        "about", "against", "between", "into", "through", "during", "before", "after",
        "above", "below", "to", "from", "up", "down", "in", "out", "on", "off", "over",
        "under", "again", "further", "then", "once", "here", "there", "when", "where",
        "why", "how", "all", "any", "both", "each", "few", "more", "most", "other",
        "some", "such", "no", "nor", "not", "only", "own", "same", "so", "than", "too",
        "very", "s", "t", "can", "will", "just", "don", "should", "now"}};
    return list;
}

StopwordList StopwordList::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open stopword file: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (!line.empty()) words.push_back(line);
    }
    if (words.empty()) throw ValidationError("stopword file is empty: " + path);
    return StopwordList(words);
}

std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& config) {
    std::string work = text;
    if (config.lowercase) {
        std::transform(work.begin(), work.end(), work.begin(), [](unsigned char c) {
            return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
        });
    }

    std::vector<std::string> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(cur);
            cur.clear();
        }
    };

    if (!config.split_punctuation) {
        for (unsigned char c : work) {
            if (is_space(c)) {
                flush();
            } else {
                cur.push_back(static_cast<char>(c));
            }
        }
        flush();
        return out;
    }

    for (std::size_t i = 0; i < work.size(); ++i) {
        unsigned char c = work[i];
        if (is_space(c)) {
            flush();
        } else if (is_word_char(c)) {
            cur.push_back(static_cast<char>(c));
        } else if (c == '.' && !cur.empty() && is_word_char(static_cast<unsigned char>(cur.back()))) {
            // A period stays inside the token when it continues a number or
            // an acronym: "3.5", "u.s.-led" -> "u.s.".
            bool next_is_word = i + 1 < work.size() && is_word_char(static_cast<unsigned char>(work[i + 1]));
            bool already_dotted = cur.find('.') != std::string::npos;
            if (next_is_word || already_dotted) {
                cur.push_back('.');
            } else {
                flush();
                out.emplace_back(1, '.');
            }
        } else {
            flush();
            out.emplace_back(1, static_cast<char>(c));
        }
    }
    flush();
    return out;
}

bool is_punctuation_token(const std::string& token) {
    if (token.empty()) return false;
    return std::all_of(token.begin(), token.end(), [](unsigned char c) {
        return c < 0x80 && std::isalnum(c) == 0;
    });
}

std::vector<std::string> content_words(const std::vector<std::string>& tokens,
                                       const StopwordList& stopwords) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (!stopwords.contains(t) && !is_punctuation_token(t)) out.push_back(t);
    }
    return out;
}

std::unordered_map<std::string, int> ngrams(const std::vector<std::string>& tokens, int n) {
    if (n < 1) throw ValidationError("ngrams: order must be >= 1");
    std::unordered_map<std::string, int> counts;
    if (tokens.size() < static_cast<std::size_t>(n)) return counts;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
        std::string key = tokens[i];
        for (int j = 1; j < n; ++j) {
            key += ' ';
            key += tokens[i + j];
        }
        ++counts[key];
    }
    return counts;
}

std::vector<std::string> truncate_words(const std::vector<std::string>& tokens, int limit) {
    if (limit < 0) return tokens;
    std::vector<std::string> out;
    int words = 0;
    for (const auto& t : tokens) {
        if (words == limit) break;
        out.push_back(t);
        if (!is_punctuation_token(t)) {
            ++words;
            if (words == limit) break;
        }
    }
    return out;
}

} // namespace singpair
