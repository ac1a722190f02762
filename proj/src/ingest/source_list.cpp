#include "probegen/ingest/source_list.hpp"

#include <fstream>
#include <unordered_set>

#include "probegen/common/log.hpp"
#include "probegen/common/text.hpp"
#include "probegen/common/url.hpp"
#include "probegen/ingest/errors.hpp"

namespace probegen::ingest {

std::string_view to_string(SourceGroup g) {
    switch (g) {
        case SourceGroup::blackpink: return "blackpink";
        case SourceGroup::citizenlab: return "citizenlab";
        case SourceGroup::other: return "other";
    }
    return "other";
}

SourceGroup parse_source_group(std::string_view s) {
    auto v = text::ascii_lower(s);
    if (v == "blackpink") {
        return SourceGroup::blackpink;
    }
    if (v == "citizenlab") {
        return SourceGroup::citizenlab;
    }
    return SourceGroup::other;
}

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        auto tab = line.find('\t', start);
        parts.push_back(line.substr(start, tab - start));
        if (tab == std::string_view::npos) {
            break;
        }
        start = tab + 1;
    }
    return parts;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

}  // namespace

LoadReport load_source_lists(std::span<const std::filesystem::path> paths) {
    LoadReport report;
    std::unordered_set<std::string> seen;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) {
            throw IngestError("cannot read source list " + path.string());
        }
        const std::string default_name = path.stem().string();
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            auto trimmed = strip(line);
            if (trimmed.empty() || trimmed.front() == '#') {
                continue;
            }
            ++report.raw_rows;
            auto cols = split_tabs(trimmed);
            std::string url(strip(cols[0]));
            if (!parse_url(url)) {
                ++report.malformed;
                log().warn("{}:{}: skipping malformed URL '{}'", path.string(), line_no, url);
                continue;
            }
            if (!seen.insert(url).second) {
                ++report.duplicates;
                continue;
            }
            SourceEntry e;
            e.url = std::move(url);
            e.list_name = cols.size() > 1 && !strip(cols[1]).empty() ? std::string(strip(cols[1])) : default_name;
            if (cols.size() > 2) {
                e.group = parse_source_group(strip(cols[2]));
            } else if (text::starts_with_ci(e.list_name, "citizenlab")) {
                e.group = SourceGroup::citizenlab;
            }
            report.entries.push_back(std::move(e));
        }
    }
    if (report.entries.empty()) {
        throw IngestError("source lists contain no valid URLs");
    }
    return report;
}

}  // namespace probegen::ingest
