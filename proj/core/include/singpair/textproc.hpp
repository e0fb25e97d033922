#pragma once

#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace singpair {

struct TokenizerConfig {
    bool lowercase = true;
    bool split_punctuation = true;
};

class StopwordList {
public:
    StopwordList() = default;
    explicit StopwordList(const std::vector<std::string>& words);

    // Built-in list of 127 common English stopwords.
    static const StopwordList& english();
    // One lowercase word per line; blank lines ignored.
    static StopwordList from_file(const std::string& path);

    bool contains(const std::string& word) const { return words_.count(word) != 0; }
    std::size_t size() const { return words_.size(); }

private:
    std::unordered_set<std::string> words_;
};

// Whitespace-delimited tokens; punctuation characters split into their own
// tokens when configured, except periods inside acronym/number tokens
// ("u.s.", "3.5"). Tokens never contain whitespace.
std::vector<std::string> tokenize(const std::string& text, const TokenizerConfig& config = {});

// Porter (1980) stem of a lowercase token. Tokens of length <= 2 are
// returned unchanged.
std::string porter_stem(const std::string& token);

// True when every character of the token is non-alphanumeric ASCII.
bool is_punctuation_token(const std::string& token);

// Tokens that are neither stopwords nor pure punctuation; order and
// duplicates preserved.
std::vector<std::string> content_words(const std::vector<std::string>& tokens,
                                       const StopwordList& stopwords);

// Contiguous n-grams with multiplicity, keyed by the tokens joined with a
// single space. Throws ValidationError when n < 1.
std::unordered_map<std::string, int> ngrams(const std::vector<std::string>& tokens, int n);

// Keeps tokens from the front until `limit` non-punctuation words have been
// taken, then drops everything after. A limit < 0 means no truncation.
std::vector<std::string> truncate_words(const std::vector<std::string>& tokens, int limit);

} // namespace singpair
