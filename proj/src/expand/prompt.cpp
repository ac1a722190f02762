#include "probegen/expand/prompt.hpp"

#include <cctype>

#include "probegen/common/error.hpp"
#include "probegen/common/jsonl.hpp"
#include "probegen/common/paths.hpp"
#include "probegen/common/text.hpp"

namespace probegen::expand {

namespace {

constexpr std::string_view kPlaceholder = "{list_of_words}";

std::string python_repr(std::string_view s) {
    // Python prefers single quotes and switches to double quotes only when
    // the string holds a single quote and no double quote.
    bool has_single = s.find('\'') != std::string_view::npos;
    bool has_double = s.find('"') != std::string_view::npos;
    char q = (has_single && !has_double) ? '"' : '\'';
    std::string out(1, q);
    for (char c : s) {
        if (c == q || c == '\\') {
            out.push_back('\\');
        }
        out.push_back(c);
    }
    out.push_back(q);
    return out;
}

// Quoted items of a list literal; nullopt when the text is not one.
std::optional<std::vector<std::string>> parse_list_literal(std::string_view s) {
    auto open = s.find('[');
    auto close = s.rfind(']');
    if (open == std::string_view::npos || close == std::string_view::npos || close < open) {
        return std::nullopt;
    }
    std::vector<std::string> items;
    std::size_t i = open + 1;
    while (i < close) {
        char c = s[i];
        if (c == '\'' || c == '"') {
            std::string item;
            std::size_t j = i + 1;
            bool closed = false;
            for (; j < close; ++j) {
                if (s[j] == '\\' && j + 1 < close) {
                    item.push_back(s[++j]);
                } else if (s[j] == c) {
                    closed = true;
                    break;
                } else {
                    item.push_back(s[j]);
                }
            }
            if (!closed) {
                return std::nullopt;
            }
            items.push_back(std::move(item));
            i = j + 1;
        } else if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else {
            return std::nullopt;
        }
    }
    return items;
}

std::string strip_line(std::string_view line) {
    std::string s = text::trim(line);
    // "1. foo", "2) foo", "- foo", "* foo"
    std::size_t k = 0;
    while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
        ++k;
    }
    if (k > 0 && k < s.size() && (s[k] == '.' || s[k] == ')')) {
        s = text::trim(std::string_view(s).substr(k + 1));
    } else if (!s.empty() && (s[0] == '-' || s[0] == '*')) {
        s = text::trim(std::string_view(s).substr(1));
    } else if (s.starts_with("\u2022")) {
        s = text::trim(std::string_view(s).substr(3));
    }
    while (!s.empty() && (s.back() == ',' || s.back() == ';')) {
        s.pop_back();
    }
    if (s.size() >= 2 && (s.front() == '\'' || s.front() == '"') && s.back() == s.front()) {
        s = s.substr(1, s.size() - 2);
    }
    return text::trim(s);
}

}  // namespace

std::string python_list_literal(const std::vector<std::string>& words) {
    std::string out = "[";
    for (std::size_t i = 0; i < words.size(); ++i) {
        if (i > 0) {
            out += ", ";
        }
        out += python_repr(words[i]);
    }
    out += "]";
    return out;
}

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
    if (text_.find(kPlaceholder) == std::string::npos) {
        throw ConfigError("prompt template lacks the {list_of_words} placeholder");
    }
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
    auto text = read_file(path);
    while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
        text.pop_back();
    }
    return PromptTemplate(std::move(text));
}

PromptTemplate PromptTemplate::load_default() { return load(data_dir() / "prompts" / "keyword_expansion.txt"); }

std::string PromptTemplate::render(const std::vector<std::string>& seed_keywords) const {
    std::string out = text_;
    auto literal = python_list_literal(seed_keywords);
    for (auto pos = out.find(kPlaceholder); pos != std::string::npos;
         pos = out.find(kPlaceholder, pos + literal.size())) {
        out.replace(pos, kPlaceholder.size(), literal);
    }
    return out;
}

std::optional<std::vector<std::string>> parse_keyword_response(std::string_view reply) {
    auto trimmed = text::trim(reply);
    if (trimmed.empty()) {
        return std::nullopt;
    }
    if (trimmed.front() == '[') {
        auto items = parse_list_literal(trimmed);
        if (!items || items->empty()) {
            return std::nullopt;
        }
        return items;
    }
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= trimmed.size()) {
        auto end = trimmed.find('\n', start);
        if (end == std::string::npos) {
            end = trimmed.size();
        }
        auto line = text::trim(std::string_view(trimmed).substr(start, end - start));
        // A list literal after a preamble line ("Here you go:\n['a', 'b']").
        if (!line.empty() && line.front() == '[') {
            if (auto list = parse_list_literal(line); list && !list->empty()) {
                return list;
            }
        }
        auto item = strip_line(line);
        // Lead-in lines such as "Here are related keywords:".
        if (!item.empty() && item.back() != ':') {
            items.push_back(std::move(item));
        }
        start = end + 1;
    }
    // A single line holding several quoted, comma-separated keywords.
    if (items.size() == 1 && items[0].find(',') != std::string::npos) {
        if (auto list = parse_list_literal("[" + items[0] + "]")) {
            return list;
        }
        if (items[0].find('\'') == std::string::npos && items[0].find('"') == std::string::npos) {
            std::vector<std::string> parts;
            std::size_t from = 0;
            for (;;) {
                auto comma = items[0].find(',', from);
                auto part = text::trim(std::string_view(items[0]).substr(from, comma - from));
                if (!part.empty()) {
                    parts.push_back(std::move(part));
                }
                if (comma == std::string::npos) {
                    break;
                }
                from = comma + 1;
            }
            return parts;
        }
        // 'a', 'b', 'c' whose outer quotes were taken as one item's quotes.
        if (auto list = parse_list_literal("['" + items[0] + "']")) {
            return list;
        }
    }
    if (items.empty()) {
        return std::nullopt;
    }
    return items;
}

}  // namespace probegen::expand
