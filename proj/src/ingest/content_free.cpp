#include "probegen/ingest/content_free.hpp"

#include <algorithm>
#include <fstream>

#include <unicode/regex.h>
#include <unicode/unistr.h>

#include "probegen/common/error.hpp"
#include "probegen/common/text.hpp"

namespace probegen::ingest {

struct ContentFreeRules::Rule {
    std::string pattern_class;
    std::string source;
    bool match_url = false;
    std::unique_ptr<icu::RegexPattern> compiled;
};

ContentFreeRules::ContentFreeRules() = default;
ContentFreeRules::~ContentFreeRules() = default;
ContentFreeRules::ContentFreeRules(ContentFreeRules&&) noexcept = default;
ContentFreeRules& ContentFreeRules::operator=(ContentFreeRules&&) noexcept = default;

void ContentFreeRules::add(std::string pattern_class, std::string_view pattern, bool match_url) {
    UErrorCode status = U_ZERO_ERROR;
    UParseError parse_error{};
    auto upattern = icu::UnicodeString::fromUTF8(icu::StringPiece(pattern.data(), static_cast<int32_t>(pattern.size())));
    std::unique_ptr<icu::RegexPattern> compiled(
        icu::RegexPattern::compile(upattern, UREGEX_CASE_INSENSITIVE, parse_error, status));
    if (U_FAILURE(status)) {
        throw ConfigError("invalid pattern '" + std::string(pattern) + "' (" + u_errorName(status) + " at offset " +
                          std::to_string(parse_error.offset) + ")");
    }
    auto rule = std::make_unique<Rule>();
    rule->pattern_class = std::move(pattern_class);
    rule->source = std::string(pattern);
    rule->match_url = match_url;
    rule->compiled = std::move(compiled);
    rules_.push_back(std::move(rule));
}

ContentFreeRules ContentFreeRules::load_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) {
        throw ConfigError("pattern directory not found: " + dir.string());
    }
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".txt") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());

    ContentFreeRules rules;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) {
            throw ConfigError("cannot read pattern file " + file.string());
        }
        std::string cls = file.stem().string();
        bool match_url = false;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (line_no == 1 && line.rfind("#!target=", 0) == 0) {
                auto target = line.substr(9);
                if (target == "url") {
                    match_url = true;
                } else if (target != "text") {
                    throw ConfigError(file.string() + ":1: unknown pattern target '" + target + "'");
                }
                continue;
            }
            if (text::trim(line).empty() || line.front() == '#') {
                continue;
            }
            try {
                rules.add(cls, line, match_url);
            } catch (const ConfigError& e) {
                throw ConfigError(file.string() + ":" + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    return rules;
}

std::optional<ContentFreeHit> ContentFreeRules::match(std::string_view body_text, std::string_view final_url) const {
    auto body = icu::UnicodeString::fromUTF8(icu::StringPiece(body_text.data(), static_cast<int32_t>(body_text.size())));
    auto url = icu::UnicodeString::fromUTF8(icu::StringPiece(final_url.data(), static_cast<int32_t>(final_url.size())));
    for (const auto& rule : rules_) {
        UErrorCode status = U_ZERO_ERROR;
        std::unique_ptr<icu::RegexMatcher> m(rule->compiled->matcher(rule->match_url ? url : body, status));
        if (U_FAILURE(status)) {
            continue;
        }
        if (m->find(status) && U_SUCCESS(status)) {
            return ContentFreeHit{rule->pattern_class, rule->source};
        }
    }
    return std::nullopt;
}

std::size_t ContentFreeRules::size() const {
    return rules_.size();
}

bool detect_content_free(std::string_view body_text, std::string_view final_url, const ContentFreeRules& rules) {
    return rules.match(body_text, final_url).has_value();
}

}  // namespace probegen::ingest
