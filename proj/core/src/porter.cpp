#include "singpair/textproc.hpp"

#include <array>
#include <string>

// Porter stemmer, following the 1980 algorithm definition: five suffix
// stripping steps, each selecting the longest matching suffix and applying
// its rule only when the measure/letter condition on the remaining stem
// holds. Within a step, once a suffix matches no shorter suffix is tried.

namespace singpair {

namespace {

class PorterState {
public:
    explicit PorterState(const std::string& word) : b_(word) {}

    std::string run() {
        if (b_.size() <= 2) return b_;
        step1a();
        step1b();
        step1c();
        step2();
        step3();
        step4();
        step5a();
        step5b();
        return b_;
    }

private:
    std::string b_;

    bool is_consonant(std::size_t i) const {
        char c = b_[i];
        switch (c) {
            case 'a': case 'e': case 'i': case 'o': case 'u':
                return false;
            case 'y':
                return i == 0 ? true : !is_consonant(i - 1);
            default:
                return true;
        }
    }

    // Measure m of b_[0..end): the number of vowel->consonant transitions,
    // i.e. m in the form [C](VC)^m[V].
    int measure(std::size_t end) const {
        int m = 0;
        bool prev_vowel = false;
        for (std::size_t i = 0; i < end; ++i) {
            bool cons = is_consonant(i);
            if (prev_vowel && cons) ++m;
            prev_vowel = !cons;
        }
        return m;
    }

    bool has_vowel(std::size_t end) const {
        for (std::size_t i = 0; i < end; ++i)
            if (!is_consonant(i)) return true;
        return false;
    }

    bool ends_with(const char* suffix, std::size_t len) const {
        if (b_.size() < len) return false;
        return b_.compare(b_.size() - len, len, suffix) == 0;
    }

    bool double_consonant_at_end() const {
        std::size_t n = b_.size();
        if (n < 2) return false;
        return b_[n - 1] == b_[n - 2] && is_consonant(n - 1);
    }

    // consonant-vowel-consonant ending at index i, where the final consonant
    // is not w, x or y.
    bool cvc(std::size_t i) const {
        if (i < 2) return false;
        if (!is_consonant(i) || is_consonant(i - 1) || !is_consonant(i - 2)) return false;
        char c = b_[i];
        return c != 'w' && c != 'x' && c != 'y';
    }

    void replace_suffix(std::size_t len, const char* repl) {
        b_.replace(b_.size() - len, len, repl);
    }

    void step1a() {
        if (ends_with("sses", 4)) {
            replace_suffix(4, "ss");
        } else if (ends_with("ies", 3)) {
            replace_suffix(3, "i");
        } else if (ends_with("ss", 2)) {
            // unchanged
        } else if (ends_with("s", 1)) {
            replace_suffix(1, "");
        }
    }

    void step1b() {
        bool removed = false;
        if (ends_with("eed", 3)) {
            if (measure(b_.size() - 3) > 0) replace_suffix(3, "ee");
        } else if (ends_with("ed", 2)) {
            if (has_vowel(b_.size() - 2)) {
                replace_suffix(2, "");
                removed = true;
            }
        } else if (ends_with("ing", 3)) {
            if (has_vowel(b_.size() - 3)) {
                replace_suffix(3, "");
                removed = true;
            }
        }
        if (!removed) return;

        if (ends_with("at", 2)) {
            replace_suffix(2, "ate");
        } else if (ends_with("bl", 2)) {
            replace_suffix(2, "ble");
        } else if (ends_with("iz", 2)) {
            replace_suffix(2, "ize");
        } else if (double_consonant_at_end()) {
            char c = b_.back();
            if (c != 'l' && c != 's' && c != 'z') b_.pop_back();
        } else if (measure(b_.size()) == 1 && cvc(b_.size() - 1)) {
            b_.push_back('e');
        }
    }

    void step1c() {
        if (ends_with("y", 1) && has_vowel(b_.size() - 1)) b_.back() = 'i';
    }

    struct Rule {
        const char* suffix;
        std::size_t len;
        const char* repl;
    };

    // Longest matching suffix wins; its rule applies only when the stem
    // measure exceeds the threshold, and the step ends either way.
    void apply_rules(const Rule* rules, std::size_t count, int min_measure) {
        for (std::size_t r = 0; r < count; ++r) {
            const Rule& rule = rules[r];
            if (!ends_with(rule.suffix, rule.len)) continue;
            if (measure(b_.size() - rule.len) > min_measure) replace_suffix(rule.len, rule.repl);
            return;
        }
    }

    void step2() {
        // Ordered by decreasing suffix length.
        static constexpr std::array<Rule, 20> rules{{
            {"ational", 7, "ate"}, {"ization", 7, "ize"}, {"iveness", 7, "ive"},
            {"fulness", 7, "ful"}, {"ousness", 7, "ous"}, {"tional", 6, "tion"},
            {"biliti", 6, "ble"},  {"entli", 5, "ent"},   {"ousli", 5, "ous"},
            {"ation", 5, "ate"},   {"alism", 5, "al"},    {"aliti", 5, "al"},
            {"iviti", 5, "ive"},   {"enci", 4, "ence"},   {"anci", 4, "ance"},
            {"izer", 4, "ize"},    {"abli", 4, "able"},   {"alli", 4, "al"},
            {"ator", 4, "ate"},    {"eli", 3, "e"},
        }};
        apply_rules(rules.data(), rules.size(), 0);
    }

    void step3() {
        static constexpr std::array<Rule, 7> rules{{
            {"icate", 5, "ic"}, {"ative", 5, ""}, {"alize", 5, "al"},
            {"iciti", 5, "ic"}, {"ical", 4, "ic"}, {"ness", 4, ""},
            {"ful", 3, ""},
        }};
        apply_rules(rules.data(), rules.size(), 0);
    }

    void step4() {
        static constexpr std::array<Rule, 18> rules{{
            {"ement", 5, ""}, {"ance", 4, ""}, {"ence", 4, ""}, {"able", 4, ""},
            {"ible", 4, ""},  {"ment", 4, ""}, {"ant", 3, ""},  {"ent", 3, ""},
            {"ism", 3, ""},   {"ate", 3, ""},  {"iti", 3, ""},  {"ous", 3, ""},
            {"ive", 3, ""},   {"ize", 3, ""},  {"ion", 3, ""},  {"al", 2, ""},
            {"er", 2, ""},    {"ic", 2, ""},
        }};
        for (const Rule& rule : rules) {
            if (!ends_with(rule.suffix, rule.len)) continue;
            std::size_t stem_len = b_.size() - rule.len;
            bool ok = measure(stem_len) > 1;
            if (rule.suffix[0] == 'i' && rule.len == 3 && rule.suffix[1] == 'o') {
                // (m>1 and (*S or *T)) ION ->
                ok = ok && stem_len > 0 && (b_[stem_len - 1] == 's' || b_[stem_len - 1] == 't');
            }
            if (ok) replace_suffix(rule.len, rule.repl);
            return;
        }
        // OU is a separate length-2 rule that must not shadow OUS above.
        if (ends_with("ou", 2) && measure(b_.size() - 2) > 1) replace_suffix(2, "");
    }

    void step5a() {
        if (!ends_with("e", 1)) return;
        int m = measure(b_.size() - 1);
        if (m > 1 || (m == 1 && !cvc(b_.size() - 2))) b_.pop_back();
    }

    void step5b() {
        if (b_.back() == 'l' && double_consonant_at_end() && measure(b_.size()) > 1)
            b_.pop_back();
    }
};

} // namespace

std::string porter_stem(const std::string& token) {
    return PorterState(token).run();
}

} // namespace singpair
