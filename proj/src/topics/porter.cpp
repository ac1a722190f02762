#include "probegen/topics/porter.hpp"

#include <functional>
#include <vector>

#include "probegen/common/text.hpp"

namespace probegen::topics {

namespace {

using Word = std::u32string;

bool is_vowel_letter(char32_t c) {
    return c == U'a' || c == U'e' || c == U'i' || c == U'o' || c == U'u';
}

// y is a consonant at the start of a word or after a vowel.
std::vector<bool> consonant_flags(const Word& w) {
    std::vector<bool> flags(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_vowel_letter(w[i])) {
            flags[i] = false;
        } else if (w[i] == U'y') {
            flags[i] = i == 0 ? true : !flags[i - 1];
        } else {
            flags[i] = true;
        }
    }
    return flags;
}

bool is_consonant(const Word& w, std::size_t i) {
    return consonant_flags(w.substr(0, i + 1))[i];
}

// Number of VC sequences in [C](VC){m}[V].
int measure(const Word& stem) {
    auto flags = consonant_flags(stem);
    int m = 0;
    for (std::size_t i = 1; i < flags.size(); ++i) {
        if (!flags[i - 1] && flags[i]) {
            ++m;
        }
    }
    return m;
}

bool contains_vowel(const Word& stem) {
    for (bool c : consonant_flags(stem)) {
        if (!c) {
            return true;
        }
    }
    return false;
}

bool ends_double_consonant(const Word& w) {
    return w.size() >= 2 && w[w.size() - 1] == w[w.size() - 2] && is_consonant(w, w.size() - 1);
}

// *o: stem ends consonant-vowel-consonant and the last letter is not w, x or y.
bool ends_cvc(const Word& w) {
    if (w.size() < 3) {
        return false;
    }
    auto f = consonant_flags(w);
    std::size_t n = w.size();
    char32_t last = w[n - 1];
    return f[n - 3] && !f[n - 2] && f[n - 1] && last != U'w' && last != U'x' && last != U'y';
}

bool ends_with(const Word& w, std::u32string_view suffix) {
    return w.size() >= suffix.size() && std::u32string_view(w).substr(w.size() - suffix.size()) == suffix;
}

struct Rule {
    std::u32string_view suffix;
    std::u32string_view replacement;
    std::function<bool(const Word&)> condition;  // empty: unconditional
};

// The first rule whose suffix matches decides; a failed condition leaves the word alone.
Word apply_rules(const Word& w, const std::vector<Rule>& rules) {
    for (const auto& r : rules) {
        if (ends_with(w, r.suffix)) {
            Word stem = w.substr(0, w.size() - r.suffix.size());
            if (!r.condition || r.condition(stem)) {
                return stem + Word(r.replacement);
            }
            return w;
        }
    }
    return w;
}

bool m_positive(const Word& s) {
    return measure(s) > 0;
}

bool m_above_one(const Word& s) {
    return measure(s) > 1;
}

Word step1a(const Word& w) {
    return apply_rules(w, {{U"sses", U"ss", {}}, {U"ies", U"i", {}}, {U"ss", U"ss", {}}, {U"s", U"", {}}});
}

Word step1b(const Word& w) {
    if (ends_with(w, U"eed")) {
        Word stem = w.substr(0, w.size() - 3);
        return measure(stem) > 0 ? stem + U"ee" : w;
    }
    Word stem;
    bool stripped = false;
    for (std::u32string_view suffix : {std::u32string_view(U"ed"), std::u32string_view(U"ing")}) {
        if (ends_with(w, suffix)) {
            stem = w.substr(0, w.size() - suffix.size());
            if (contains_vowel(stem)) {
                stripped = true;
                break;
            }
        }
    }
    if (!stripped) {
        return w;
    }
    if (ends_with(stem, U"at") || ends_with(stem, U"bl") || ends_with(stem, U"iz")) {
        return stem + U"e";
    }
    if (ends_double_consonant(stem)) {
        char32_t last = stem.back();
        if (last != U'l' && last != U's' && last != U'z') {
            stem.pop_back();
        }
        return stem;
    }
    if (measure(stem) == 1 && ends_cvc(stem)) {
        return stem + U"e";
    }
    return stem;
}

Word step1c(const Word& w) {
    return apply_rules(w, {{U"y", U"i", contains_vowel}});
}

Word step2(const Word& w) {
    static const std::vector<Rule> rules{
        {U"ational", U"ate", m_positive}, {U"tional", U"tion", m_positive}, {U"enci", U"ence", m_positive},
        {U"anci", U"ance", m_positive},   {U"izer", U"ize", m_positive},    {U"abli", U"able", m_positive},
        {U"alli", U"al", m_positive},     {U"entli", U"ent", m_positive},   {U"eli", U"e", m_positive},
        {U"ousli", U"ous", m_positive},   {U"ization", U"ize", m_positive}, {U"ation", U"ate", m_positive},
        {U"ator", U"ate", m_positive},    {U"alism", U"al", m_positive},    {U"iveness", U"ive", m_positive},
        {U"fulness", U"ful", m_positive}, {U"ousness", U"ous", m_positive}, {U"aliti", U"al", m_positive},
        {U"iviti", U"ive", m_positive},   {U"biliti", U"ble", m_positive}};
    return apply_rules(w, rules);
}

Word step3(const Word& w) {
    static const std::vector<Rule> rules{{U"icate", U"ic", m_positive}, {U"ative", U"", m_positive},
                                         {U"alize", U"al", m_positive}, {U"iciti", U"ic", m_positive},
                                         {U"ical", U"ic", m_positive},  {U"ful", U"", m_positive},
                                         {U"ness", U"", m_positive}};
    return apply_rules(w, rules);
}

Word step4(const Word& w) {
    static const std::vector<Rule> rules{
        {U"al", U"", m_above_one},   {U"ance", U"", m_above_one}, {U"ence", U"", m_above_one},
        {U"er", U"", m_above_one},   {U"ic", U"", m_above_one},   {U"able", U"", m_above_one},
        {U"ible", U"", m_above_one}, {U"ant", U"", m_above_one},  {U"ement", U"", m_above_one},
        {U"ment", U"", m_above_one}, {U"ent", U"", m_above_one},
        {U"ion", U"", [](const Word& s) { return measure(s) > 1 && !s.empty() && (s.back() == U's' || s.back() == U't'); }},
        {U"ou", U"", m_above_one},   {U"ism", U"", m_above_one},  {U"ate", U"", m_above_one},
        {U"iti", U"", m_above_one},  {U"ous", U"", m_above_one},  {U"ive", U"", m_above_one},
        {U"ize", U"", m_above_one}};
    return apply_rules(w, rules);
}

Word step5a(const Word& w) {
    if (!ends_with(w, U"e")) {
        return w;
    }
    Word stem = w.substr(0, w.size() - 1);
    int m = measure(stem);
    if (m > 1 || (m == 1 && !ends_cvc(stem))) {
        return stem;
    }
    return w;
}

Word step5b(const Word& w) {
    if (ends_with(w, U"ll") && measure(w.substr(0, w.size() - 1)) > 1) {
        return w.substr(0, w.size() - 1);
    }
    return w;
}

}  // namespace

std::string porter_stem(std::string_view word) {
    Word w = text::to_u32(text::to_lower(word));
    w = step1a(w);
    w = step1b(w);
    w = step1c(w);
    w = step2(w);
    w = step3(w);
    w = step4(w);
    w = step5a(w);
    w = step5b(w);
    return text::to_utf8(w);
}

}  // namespace probegen::topics
