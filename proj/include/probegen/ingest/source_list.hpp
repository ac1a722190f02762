#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace probegen::ingest {

enum class SourceGroup { blackpink, citizenlab, other };

std::string_view to_string(SourceGroup g);
SourceGroup parse_source_group(std::string_view s);

struct SourceEntry {
    std::string url;
    std::string list_name;
    SourceGroup group = SourceGroup::other;
};

struct LoadReport {
    std::vector<SourceEntry> entries;
    std::size_t raw_rows = 0;    // non-comment, non-blank lines seen
    std::size_t duplicates = 0;  // rows dropped as exact-URL repeats
    std::size_t malformed = 0;   // rows skipped because the URL did not parse
};

// Reads newline-delimited URL lists. Each line is
//   url [TAB list_name [TAB group]]
// with '#' comments and blank lines ignored. The list name defaults to the
// file stem. Entries are deduplicated on the exact URL string, keeping the
// first occurrence in (file order, line order).
//
// Throws IngestError when a file cannot be read or when no valid URL remains.
LoadReport load_source_lists(std::span<const std::filesystem::path> paths);

}  // namespace probegen::ingest
