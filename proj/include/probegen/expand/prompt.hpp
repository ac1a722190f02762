#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace probegen::expand {

// Python list literal, e.g. ['botanics', 'plants', "o'neill"].
std::string python_list_literal(const std::vector<std::string>& words);

// Keyword-expansion prompt with a single "{list_of_words}" placeholder.
class PromptTemplate {
public:
    explicit PromptTemplate(std::string text);
    static PromptTemplate load(const std::filesystem::path& path);
    static PromptTemplate load_default();

    std::string render(const std::vector<std::string>& seed_keywords) const;
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

// Parses a model reply into keywords. Accepts a list literal (Python or JSON
// quoting) or one keyword per line, with bullets, numbering and surrounding
// quotes stripped. nullopt when nothing usable is found.
std::optional<std::vector<std::string>> parse_keyword_response(std::string_view reply);

}  // namespace probegen::expand
