#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace probegen::ingest {

struct ContentFreeHit {
    std::string pattern_class;  // file stem, e.g. "parked"
    std::string pattern;
};

// Regex classes that mark a page as carrying no real content: removed-video
// notices, error placeholders, parked or for-sale pages.
//
// Pattern files hold one regex per line; '#' starts a comment line. A file
// whose first line is "#!target=url" is matched against the final URL instead
// of the extracted text. Matching is case-insensitive.
class ContentFreeRules {
public:
    ContentFreeRules();
    ~ContentFreeRules();
    ContentFreeRules(ContentFreeRules&&) noexcept;
    ContentFreeRules& operator=(ContentFreeRules&&) noexcept;

    // Loads every *.txt file in `dir` (sorted by name). Throws ConfigError
    // naming file:line for a pattern that does not compile.
    static ContentFreeRules load_dir(const std::filesystem::path& dir);

    // Adds one pattern; throws ConfigError when it does not compile.
    void add(std::string pattern_class, std::string_view pattern, bool match_url = false);

    std::optional<ContentFreeHit> match(std::string_view body_text, std::string_view final_url) const;

    std::size_t size() const;

private:
    struct Rule;
    std::vector<std::unique_ptr<Rule>> rules_;
};

bool detect_content_free(std::string_view body_text, std::string_view final_url,
                         const ContentFreeRules& rules);

}  // namespace probegen::ingest
