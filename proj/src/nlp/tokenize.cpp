#include "probegen/nlp/tokenize.hpp"

#include <algorithm>
#include <fstream>
#include <memory>

#include <unicode/brkiter.h>
#include <unicode/locid.h>
#include <unicode/unistr.h>

#include "probegen/common/error.hpp"
#include "probegen/common/log.hpp"
#include "probegen/common/text.hpp"

namespace probegen::nlp {

Json to_json(const TokenizedDoc& doc) {
    Json j;
    j["url"] = doc.url;
    j["lang"] = {{"code", doc.lang.code},
                 {"confidence", doc.lang.confidence},
                 {"detector", std::string(to_string(doc.lang.detector))}};
    j["tokens"] = doc.tokens;
    return j;
}

TokenizedDoc tokenized_doc_from_json(const Json& j) {
    TokenizedDoc d;
    d.url = j.at("url").get<std::string>();
    const auto& lang = j.at("lang");
    d.lang.code = lang.at("code").get<std::string>();
    d.lang.confidence = lang.at("confidence").get<double>();
    d.lang.detector = parse_detector_id(lang.at("detector").get<std::string>());
    d.tokens = j.at("tokens").get<std::vector<std::string>>();
    return d;
}

StopwordStore StopwordStore::load_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("stopword directory not found: " + dir.string());
    }
    StopwordStore store;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() != ".txt") {
            continue;
        }
        std::ifstream in(e.path());
        std::string line;
        const auto lang = e.path().stem().string();
        store.lists_[lang];
        while (std::getline(in, line)) {
            auto w = text::trim(line);
            if (!w.empty() && w.front() != '#') {
                store.add(lang, std::move(w));
            }
        }
    }
    return store;
}

void StopwordStore::add(const std::string& lang, std::string word) {
    lists_[lang].insert(text::to_lower(word));
}

bool StopwordStore::has_language(std::string_view lang) const {
    return lists_.contains(std::string(lang));
}

bool StopwordStore::contains(std::string_view lang, std::string_view lowered) const {
    auto it = lists_.find(std::string(lang));
    return it != lists_.end() && it->second.contains(std::string(lowered));
}

std::vector<std::string> IcuWordSegmenter::segment(std::string_view run, std::string_view lang) const {
    UErrorCode status = U_ZERO_ERROR;
    icu::Locale locale(std::string(lang).c_str());
    std::unique_ptr<icu::BreakIterator> it(icu::BreakIterator::createWordInstance(locale, status));
    if (U_FAILURE(status)) {
        throw Error(std::string("ICU word break iterator unavailable: ") + u_errorName(status));
    }
    auto u = icu::UnicodeString::fromUTF8(icu::StringPiece(run.data(), static_cast<int32_t>(run.size())));
    it->setText(u);
    std::vector<std::string> words;
    int32_t start = it->first();
    for (int32_t end = it->next(); end != icu::BreakIterator::DONE; start = end, end = it->next()) {
        if (it->getRuleStatus() == UBRK_WORD_NONE) {
            continue;
        }
        std::string w;
        u.tempSubStringBetween(start, end).toUTF8String(w);
        words.push_back(std::move(w));
    }
    return words;
}

namespace {

bool is_apostrophe(char32_t cp) {
    return cp == U'\'' || cp == 0x2019 || cp == 0x02BC;
}

bool is_word_char(char32_t cp) {
    return text::is_letter(cp) || text::is_mark(cp) || text::is_digit(cp);
}

std::vector<std::string> bigram_fallback(const std::u32string& run) {
    std::vector<std::string> out;
    if (run.size() == 1) {
        out.push_back(text::to_utf8(run));
        return out;
    }
    for (std::size_t i = 0; i + 1 < run.size(); ++i) {
        out.push_back(text::to_utf8(run.substr(i, 2)));
    }
    return out;
}

class Emitter {
public:
    Emitter(std::string_view lang, const StopwordStore& stopwords, std::vector<std::string>& out)
        : lang_(lang), stopwords_(stopwords), out_(out) {}

    void emit(const std::string& raw) {
        auto cps = text::to_u32(text::to_lower(raw));
        std::replace_if(cps.begin(), cps.end(), is_apostrophe, U'\'');
        auto token = text::to_utf8(cps);
        if (token.empty() || stopwords_.contains(lang_, token)) {
            return;
        }
        if (std::none_of(cps.begin(), cps.end(), is_apostrophe)) {
            out_.push_back(std::move(token));
            return;
        }
        // Elided forms: "l'état" -> "état", "people's" -> "people".
        std::u32string part;
        auto flush = [&] {
            if (part.size() > 1) {
                auto p = text::to_utf8(part);
                if (!stopwords_.contains(lang_, p)) {
                    out_.push_back(std::move(p));
                }
            }
            part.clear();
        };
        for (char32_t cp : cps) {
            if (is_apostrophe(cp)) {
                flush();
            } else {
                part.push_back(cp);
            }
        }
        flush();
    }

private:
    std::string_view lang_;
    const StopwordStore& stopwords_;
    std::vector<std::string>& out_;
};

}  // namespace

std::vector<std::string> tokenize_text(std::string_view input, std::string_view lang, const StopwordStore& stopwords,
                                       const Segmenter* segmenter) {
    std::vector<std::string> out;
    Emitter emitter(lang, stopwords, out);
    auto cps = text::to_u32(input);
    bool warned = false;

    std::u32string word;
    auto flush_word = [&] {
        if (word.empty()) {
            return;
        }
        // Split the word into spaced and unspaced-script runs.
        std::size_t i = 0;
        while (i < word.size()) {
            bool unspaced = text::is_unspaced_script(word[i]);
            std::size_t j = i;
            while (j < word.size() &&
                   (text::is_unspaced_script(word[j]) == unspaced || (text::is_mark(word[j]) && j > i))) {
                ++j;
            }
            auto run = word.substr(i, j - i);
            if (!unspaced) {
                emitter.emit(text::to_utf8(run));
            } else if (segmenter) {
                for (const auto& w : segmenter->segment(text::to_utf8(run), lang)) {
                    emitter.emit(w);
                }
            } else {
                if (!warned) {
                    log().warn("no segmenter for unspaced script (lang '{}'); using code-point bigrams", lang);
                    warned = true;
                }
                for (const auto& w : bigram_fallback(run)) {
                    emitter.emit(w);
                }
            }
            i = j;
        }
        word.clear();
    };

    for (std::size_t i = 0; i < cps.size(); ++i) {
        char32_t cp = cps[i];
        if (is_word_char(cp)) {
            word.push_back(cp);
        } else if (is_apostrophe(cp) && !word.empty() && text::is_letter(word.back()) && i + 1 < cps.size() &&
                   text::is_letter(cps[i + 1])) {
            word.push_back(cp);
        } else {
            flush_word();
        }
    }
    flush_word();
    return out;
}

TokenizedDoc tokenize(std::string url, std::string_view text, const LanguageTag& lang,
                      const StopwordStore& stopwords, const Segmenter* segmenter) {
    TokenizedDoc doc;
    doc.url = std::move(url);
    doc.lang = lang;
    doc.tokens = tokenize_text(text, lang.code, stopwords, segmenter);
    return doc;
}

}  // namespace probegen::nlp
