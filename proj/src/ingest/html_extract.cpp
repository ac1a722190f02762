#include "probegen/ingest/html_extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <functional>
#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "probegen/common/text.hpp"

namespace probegen::ingest {

namespace {

bool is_ascii_space(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f';
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == ':' || c == '.';
}

std::string read_charset_token(std::string_view s, std::size_t pos) {
    while (pos < s.size() && (is_ascii_space(s[pos]) || s[pos] == '"' || s[pos] == '\'')) {
        ++pos;
    }
    std::size_t end = pos;
    while (end < s.size() && is_name_char(s[end])) {
        ++end;
    }
    return std::string(s.substr(pos, end - pos));
}

// WHATWG treats these labels as windows-1252.
std::string normalize_charset(std::string label) {
    label = text::ascii_lower(label);
    if (label == "utf8") {
        return "utf-8";
    }
    if (label == "iso-8859-1" || label == "latin1" || label == "l1" || label == "us-ascii" || label == "ascii" ||
        label == "iso8859-1" || label == "cp1252") {
        return "windows-1252";
    }
    return label;
}

}  // namespace

std::optional<std::string> charset_from_content_type(std::string_view content_type) {
    auto lower = text::ascii_lower(content_type);
    auto pos = lower.find("charset");
    if (pos == std::string::npos) {
        return std::nullopt;
    }
    pos += 7;
    while (pos < lower.size() && is_ascii_space(lower[pos])) {
        ++pos;
    }
    if (pos >= lower.size() || lower[pos] != '=') {
        return std::nullopt;
    }
    auto token = read_charset_token(lower, pos + 1);
    if (token.empty()) {
        return std::nullopt;
    }
    return normalize_charset(token);
}

std::optional<std::string> charset_from_meta(std::string_view bytes) {
    auto head = text::ascii_lower(bytes.substr(0, std::min<std::size_t>(bytes.size(), 4096)));
    std::size_t pos = 0;
    while ((pos = head.find("<meta", pos)) != std::string::npos) {
        auto close = head.find('>', pos);
        if (close == std::string::npos) {
            break;
        }
        std::string_view tag(head.data() + pos, close - pos);
        auto cs = tag.find("charset");
        if (cs != std::string_view::npos) {
            auto eq = cs + 7;
            while (eq < tag.size() && is_ascii_space(tag[eq])) {
                ++eq;
            }
            if (eq < tag.size() && tag[eq] == '=') {
                auto token = read_charset_token(tag, eq + 1);
                if (!token.empty()) {
                    return normalize_charset(token);
                }
            }
        }
        pos = close;
    }
    return std::nullopt;
}

std::optional<std::string> decode_document(std::string_view bytes, std::string_view content_type) {
    if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") {
        return text::sanitize_utf8(bytes.substr(3));
    }
    if (bytes.size() >= 2 && (bytes.substr(0, 2) == "\xFF\xFE" || bytes.substr(0, 2) == "\xFE\xFF")) {
        auto s = text::transcode_to_utf8(bytes, bytes[0] == '\xFF' ? "UTF-16LE" : "UTF-16BE");
        // The converter keeps the BOM as U+FEFF.
        if (s && s->rfind("\xEF\xBB\xBF", 0) == 0) {
            s->erase(0, 3);
        }
        return s;
    }
    if (bytes.find('\0') != std::string_view::npos) {
        return std::nullopt;
    }
    std::optional<std::string> charset = charset_from_content_type(content_type);
    if (!charset) {
        charset = charset_from_meta(bytes);
    }
    if (charset && *charset != "utf-8") {
        if (auto decoded = text::transcode_to_utf8(bytes, *charset)) {
            return decoded;
        }
    }
    return text::sanitize_utf8(bytes);
}

namespace {

// Latin-1 supplement names, U+00A0 .. U+00FF.
constexpr std::array<const char*, 96> kLatin1Entities{
    "nbsp",   "iexcl",  "cent",   "pound",  "curren", "yen",    "brvbar", "sect",   "uml",    "copy",   "ordf",
    "laquo",  "not",    "shy",    "reg",    "macr",   "deg",    "plusmn", "sup2",   "sup3",   "acute",  "micro",
    "para",   "middot", "cedil",  "sup1",   "ordm",   "raquo",  "frac14", "frac12", "frac34", "iquest", "Agrave",
    "Aacute", "Acirc",  "Atilde", "Auml",   "Aring",  "AElig",  "Ccedil", "Egrave", "Eacute", "Ecirc",  "Euml",
    "Igrave", "Iacute", "Icirc",  "Iuml",   "ETH",    "Ntilde", "Ograve", "Oacute", "Ocirc",  "Otilde", "Ouml",
    "times",  "Oslash", "Ugrave", "Uacute", "Ucirc",  "Uuml",   "Yacute", "THORN",  "szlig",  "agrave", "aacute",
    "acirc",  "atilde", "auml",   "aring",  "aelig",  "ccedil", "egrave", "eacute", "ecirc",  "euml",   "igrave",
    "iacute", "icirc",  "iuml",   "eth",    "ntilde", "ograve", "oacute", "ocirc",  "otilde", "ouml",   "divide",
    "oslash", "ugrave", "uacute", "ucirc",  "uuml",   "yacute", "thorn",  "yuml"};

const std::unordered_map<std::string, char32_t>& entity_table() {
    static const auto table = [] {
        std::unordered_map<std::string, char32_t> t{
            {"amp", U'&'},      {"lt", U'<'},       {"gt", U'>'},        {"quot", U'"'},      {"apos", U'\''},
            {"ndash", 0x2013},  {"mdash", 0x2014},  {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"sbquo", 0x201A},
            {"ldquo", 0x201C},  {"rdquo", 0x201D},  {"bdquo", 0x201E},   {"hellip", 0x2026},  {"bull", 0x2022},
            {"euro", 0x20AC},   {"trade", 0x2122},  {"thinsp", 0x2009},  {"ensp", 0x2002},    {"emsp", 0x2003},
            {"zwnj", 0x200C},   {"zwj", 0x200D},    {"lrm", 0x200E},     {"rlm", 0x200F},     {"dagger", 0x2020},
            {"Dagger", 0x2021}, {"permil", 0x2030}, {"lsaquo", 0x2039},  {"rsaquo", 0x203A},  {"OElig", 0x152},
            {"oelig", 0x153},   {"Scaron", 0x160},  {"scaron", 0x161},   {"Yuml", 0x178},     {"fnof", 0x192},
            {"circ", 0x2C6},    {"tilde", 0x2DC},   {"larr", 0x2190},    {"rarr", 0x2192},    {"uarr", 0x2191},
            {"darr", 0x2193},   {"hearts", 0x2665}, {"star", 0x2606},    {"check", 0x2713},   {"prime", 0x2032}};
        for (std::size_t i = 0; i < kLatin1Entities.size(); ++i) {
            t.emplace(kLatin1Entities[i], static_cast<char32_t>(0xA0 + i));
        }
        return t;
    }();
    return table;
}

// References honoured without the trailing semicolon, as browsers do.
bool legacy_entity(std::string_view name) {
    return name == "amp" || name == "lt" || name == "gt" || name == "quot" || name == "nbsp" || name == "copy" ||
           name == "reg";
}

}  // namespace

std::string decode_entities(std::string_view in) {
    std::string out;
    out.reserve(in.size());
    std::size_t i = 0;
    while (i < in.size()) {
        char c = in[i];
        if (c != '&') {
            out.push_back(c);
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        if (j < in.size() && in[j] == '#') {
            ++j;
            bool hex = j < in.size() && (in[j] == 'x' || in[j] == 'X');
            if (hex) {
                ++j;
            }
            std::size_t start = j;
            std::uint32_t value = 0;
            while (j < in.size() && (hex ? std::isxdigit(static_cast<unsigned char>(in[j]))
                                         : std::isdigit(static_cast<unsigned char>(in[j])))) {
                if (value <= 0x10FFFF) {
                    value = value * (hex ? 16 : 10) +
                            static_cast<std::uint32_t>(std::isdigit(static_cast<unsigned char>(in[j]))
                                                           ? in[j] - '0'
                                                           : (std::tolower(static_cast<unsigned char>(in[j])) - 'a' + 10));
                }
                ++j;
            }
            if (j == start) {
                out.push_back('&');
                ++i;
                continue;
            }
            if (j < in.size() && in[j] == ';') {
                ++j;
            }
            char32_t cp = value;
            if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
                cp = 0xFFFD;
            }
            text::append_utf8(out, cp);
            i = j;
            continue;
        }
        while (j < in.size() && std::isalnum(static_cast<unsigned char>(in[j])) && j - i <= 10) {
            ++j;
        }
        std::string name(in.substr(i + 1, j - i - 1));
        bool semicolon = j < in.size() && in[j] == ';';
        const auto& table = entity_table();
        auto it = table.find(name);
        if (it != table.end() && (semicolon || legacy_entity(name))) {
            text::append_utf8(out, it->second);
            i = semicolon ? j + 1 : j;
            continue;
        }
        out.push_back('&');
        ++i;
    }
    return out;
}

namespace {

struct Node {
    std::string tag;  // empty for text nodes
    std::string text;
    std::unordered_map<std::string, std::string> attrs;
    std::vector<Node*> children;
    Node* parent = nullptr;
};

const std::unordered_set<std::string_view> kVoidTags{"area",  "base", "br",   "col",   "embed",  "hr",    "img",
                                                     "input", "link", "meta", "param", "source", "track", "wbr"};

const std::unordered_set<std::string_view> kRawTextTags{"script",  "style",   "textarea", "title",   "xmp",
                                                        "iframe",  "noembed", "noframes", "noscript", "template",
                                                        "plaintext"};

const std::unordered_set<std::string_view> kClosesParagraph{
    "address", "article", "aside",  "blockquote", "details", "div",  "dl",     "fieldset", "figcaption",
    "figure",  "footer",  "form",   "h1",         "h2",      "h3",   "h4",     "h5",       "h6",
    "header",  "hr",      "main",   "menu",       "nav",     "ol",   "p",      "pre",      "section",
    "table",   "ul",      "li",     "dt",         "dd"};

const std::unordered_set<std::string_view> kHeadTags{"meta",     "link",     "title", "style", "script", "base",
                                                     "noscript", "template", "object"};

// Subtrees that never hold main content.
const std::unordered_set<std::string_view> kDropTags{
    "head",    "script",   "style",    "noscript", "template", "iframe", "svg",   "canvas", "nav",
    "header",  "footer",   "aside",    "form",     "menu",     "button", "select", "option", "textarea",
    "input",   "label",    "title",    "xmp",      "noembed",  "noframes", "object", "embed", "audio",
    "video",   "map",      "dialog",   "plaintext"};

const std::unordered_set<std::string_view> kDropRoles{"navigation", "banner",      "contentinfo", "complementary",
                                                      "menu",       "menubar",     "search",      "dialog",
                                                      "alert",      "toolbar",     "tablist"};

// Parts of class / id names that mark boilerplate containers.
const std::unordered_set<std::string_view> kBoilerplateNames{
    "nav",       "navbar",   "navigation", "menu",       "footer",   "header",  "masthead", "sidebar",
    "social",    "share",    "sharing",    "sharebar",   "cookie",   "cookies", "consent",  "breadcrumb",
    "breadcrumbs", "banner", "advert",     "advertisement", "ad",    "ads",     "adsbygoogle", "promo",
    "related",   "comments", "comment",    "subscribe",  "newsletter", "popup", "modal",    "toolbar",
    "skip",      "widget",   "pagination", "pager",      "tags",     "tagcloud", "byline-share", "outbrain",
    "taboola",   "sponsored", "signup",    "login",      "search"};

const std::unordered_set<std::string_view> kBlockTags{
    "address", "article", "blockquote", "body",   "caption", "dd",  "details", "div",  "dl",     "dt",
    "fieldset", "figcaption", "figure", "h1",     "h2",      "h3",  "h4",      "h5",   "h6",     "hr",
    "html",    "li",      "main",       "ol",     "p",       "pre", "section", "summary", "table", "tbody",
    "td",      "tfoot",   "th",         "thead",  "tr",      "ul",  "br",      "center"};

class Parser {
public:
    explicit Parser(std::string_view html) : src_(html) {
        root_ = make("#root");
        stack_.push_back(root_);
    }

    Node* parse() {
        while (pos_ < src_.size()) {
            if (src_[pos_] == '<') {
                parse_markup();
            } else {
                auto next = src_.find('<', pos_);
                if (next == std::string_view::npos) {
                    next = src_.size();
                }
                add_text(decode_entities(src_.substr(pos_, next - pos_)));
                pos_ = next;
            }
        }
        return root_;
    }

private:
    Node* make(std::string tag) {
        nodes_.push_back(std::make_unique<Node>());
        nodes_.back()->tag = std::move(tag);
        return nodes_.back().get();
    }

    Node* top() { return stack_.back(); }

    void append(Node* n) {
        n->parent = top();
        top()->children.push_back(n);
    }

    void add_text(std::string t) {
        if (t.empty()) {
            return;
        }
        auto& kids = top()->children;
        if (!kids.empty() && kids.back()->tag.empty()) {
            kids.back()->text += t;
            return;
        }
        Node* n = make("");
        n->text = std::move(t);
        append(n);
    }

    void parse_markup() {
        if (src_.compare(pos_, 4, "<!--") == 0) {
            auto end = src_.find("-->", pos_ + 4);
            pos_ = end == std::string_view::npos ? src_.size() : end + 3;
            return;
        }
        if (pos_ + 1 < src_.size() && (src_[pos_ + 1] == '!' || src_[pos_ + 1] == '?')) {
            auto end = src_.find('>', pos_);
            pos_ = end == std::string_view::npos ? src_.size() : end + 1;
            return;
        }
        if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '/') {
            parse_end_tag();
            return;
        }
        if (pos_ + 1 < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_ + 1]))) {
            parse_start_tag();
            return;
        }
        add_text("<");
        ++pos_;
    }

    std::string read_name() {
        std::size_t start = pos_;
        while (pos_ < src_.size() && !is_ascii_space(src_[pos_]) && src_[pos_] != '>' && src_[pos_] != '/' &&
               src_[pos_] != '=') {
            ++pos_;
        }
        return text::ascii_lower(src_.substr(start, pos_ - start));
    }

    void skip_space() {
        while (pos_ < src_.size() && is_ascii_space(src_[pos_])) {
            ++pos_;
        }
    }

    void parse_end_tag() {
        pos_ += 2;
        auto name = read_name();
        auto end = src_.find('>', pos_);
        pos_ = end == std::string_view::npos ? src_.size() : end + 1;
        for (std::size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i]->tag == name) {
                stack_.resize(i);
                return;
            }
        }
    }

    void close_implied(const std::string& name) {
        if (name == "body" || (top()->tag == "head" && !kHeadTags.contains(name))) {
            pop_to("head");
        }
        if (kClosesParagraph.contains(name) && top()->tag == "p") {
            stack_.pop_back();
        }
        if (name == "li") {
            pop_within("li", {"ul", "ol", "menu"});
        } else if (name == "dt" || name == "dd") {
            pop_within("dt", {"dl"});
            pop_within("dd", {"dl"});
        } else if (name == "td" || name == "th") {
            pop_within("td", {"tr", "table"});
            pop_within("th", {"tr", "table"});
        } else if (name == "tr") {
            pop_within("tr", {"table", "tbody", "thead", "tfoot"});
        } else if (name == "option") {
            pop_within("option", {"select"});
        }
    }

    void pop_to(std::string_view tag) {
        for (std::size_t i = stack_.size(); i-- > 1;) {
            if (stack_[i]->tag == tag) {
                stack_.resize(i);
                return;
            }
        }
    }

    // Closes the nearest open `tag` unless a `boundary` element is nearer.
    void pop_within(std::string_view tag, std::initializer_list<std::string_view> boundary) {
        for (std::size_t i = stack_.size(); i-- > 1;) {
            const auto& t = stack_[i]->tag;
            if (t == tag) {
                stack_.resize(i);
                return;
            }
            if (std::find(boundary.begin(), boundary.end(), t) != boundary.end()) {
                return;
            }
        }
    }

    void parse_start_tag() {
        ++pos_;
        auto name = read_name();
        Node* el = make(name);
        bool self_closing = false;
        for (;;) {
            skip_space();
            if (pos_ >= src_.size()) {
                break;
            }
            if (src_[pos_] == '>') {
                ++pos_;
                break;
            }
            if (src_[pos_] == '/') {
                self_closing = true;
                ++pos_;
                continue;
            }
            auto attr = read_name();
            if (attr.empty()) {
                ++pos_;
                continue;
            }
            skip_space();
            std::string value;
            if (pos_ < src_.size() && src_[pos_] == '=') {
                ++pos_;
                skip_space();
                if (pos_ < src_.size() && (src_[pos_] == '"' || src_[pos_] == '\'')) {
                    char q = src_[pos_++];
                    auto end = src_.find(q, pos_);
                    if (end == std::string_view::npos) {
                        end = src_.size();
                    }
                    value = decode_entities(src_.substr(pos_, end - pos_));
                    pos_ = std::min(end + 1, src_.size());
                } else {
                    std::size_t start = pos_;
                    while (pos_ < src_.size() && !is_ascii_space(src_[pos_]) && src_[pos_] != '>') {
                        ++pos_;
                    }
                    value = decode_entities(src_.substr(start, pos_ - start));
                }
            }
            el->attrs.emplace(std::move(attr), std::move(value));
        }

        close_implied(name);
        append(el);
        if (kRawTextTags.contains(name)) {
            std::string closer = "</" + name;
            auto lower_rest = text::ascii_lower(src_.substr(pos_));
            auto end = lower_rest.find(closer);
            std::size_t content_end = end == std::string::npos ? src_.size() : pos_ + end;
            Node* t = make("");
            t->text = std::string(src_.substr(pos_, content_end - pos_));
            t->parent = el;
            el->children.push_back(t);
            if (end == std::string::npos) {
                pos_ = src_.size();
            } else {
                auto gt = src_.find('>', content_end);
                pos_ = gt == std::string_view::npos ? src_.size() : gt + 1;
            }
            return;
        }
        if (!self_closing && !kVoidTags.contains(name)) {
            stack_.push_back(el);
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::vector<std::unique_ptr<Node>> nodes_;
    std::vector<Node*> stack_;
    Node* root_ = nullptr;

public:
    // Keeps node storage alive alongside the returned tree.
    std::vector<std::unique_ptr<Node>> release() { return std::move(nodes_); }
};

std::string attr(const Node* n, const char* key) {
    auto it = n->attrs.find(key);
    return it == n->attrs.end() ? std::string() : text::ascii_lower(it->second);
}

bool names_boilerplate(const std::string& value) {
    for (const auto& token : text::split_whitespace(value)) {
        if (kBoilerplateNames.contains(token)) {
            return true;
        }
        std::size_t start = 0;
        while (start <= token.size()) {
            auto sep = token.find_first_of("-_", start);
            auto part = std::string_view(token).substr(start, sep == std::string::npos ? std::string::npos : sep - start);
            if (kBoilerplateNames.contains(part)) {
                return true;
            }
            if (sep == std::string::npos) {
                break;
            }
            start = sep + 1;
        }
    }
    return false;
}

bool is_boilerplate(const Node* n) {
    if (n->tag.empty()) {
        return false;
    }
    if (kDropTags.contains(n->tag)) {
        return true;
    }
    if (kDropRoles.contains(attr(n, "role"))) {
        return true;
    }
    if (n->attrs.contains("hidden") || attr(n, "aria-hidden") == "true") {
        return true;
    }
    auto style = attr(n, "style");
    style.erase(std::remove_if(style.begin(), style.end(), [](char c) { return is_ascii_space(c); }), style.end());
    if (style.find("display:none") != std::string::npos || style.find("visibility:hidden") != std::string::npos) {
        return true;
    }
    // Page-level containers often carry layout classes such as "has-sidebar".
    if (n->tag == "html" || n->tag == "body" || n->tag == "main" || n->tag == "article" || n->tag == "#root") {
        return false;
    }
    return names_boilerplate(attr(n, "class")) || names_boilerplate(attr(n, "id"));
}

std::size_t visible_chars(std::string_view s) {
    std::size_t n = 0;
    for (char32_t cp : text::to_u32(s)) {
        if (!text::is_space(cp)) {
            ++n;
        }
    }
    return n;
}

struct Block {
    std::string text;
    std::size_t chars = 0;
    std::size_t link_chars = 0;
};

class BlockCollector {
public:
    void walk(const Node* n, bool in_link) {
        if (is_boilerplate(n)) {
            return;
        }
        if (n->tag.empty()) {
            auto chars = visible_chars(n->text);
            current_.text += n->text;
            current_.chars += chars;
            if (in_link) {
                current_.link_chars += chars;
            }
            return;
        }
        bool block = kBlockTags.contains(n->tag);
        if (block) {
            flush();
        }
        bool link = in_link || n->tag == "a";
        for (const Node* c : n->children) {
            walk(c, link);
        }
        if (block) {
            flush();
        }
    }

    std::string finish() {
        flush();
        std::string out;
        for (const auto& b : blocks_) {
            if (!out.empty()) {
                out.push_back('\n');
            }
            out += b;
        }
        return out;
    }

private:
    void flush() {
        if (current_.chars > 0 && current_.link_chars * 2 <= current_.chars) {
            auto collapsed = text::collapse_whitespace(current_.text);
            if (!collapsed.empty()) {
                blocks_.push_back(std::move(collapsed));
            }
        }
        current_ = Block{};
    }

    Block current_;
    std::vector<std::string> blocks_;
};

std::size_t content_size(const Node* n) {
    if (is_boilerplate(n)) {
        return 0;
    }
    if (n->tag.empty()) {
        return visible_chars(n->text);
    }
    std::size_t total = 0;
    for (const Node* c : n->children) {
        total += content_size(c);
    }
    return total;
}

void find_all(const Node* n, const std::function<bool(const Node*)>& pred, std::vector<const Node*>& out) {
    if (is_boilerplate(n)) {
        return;
    }
    if (pred(n)) {
        out.push_back(n);
    }
    for (const Node* c : n->children) {
        find_all(c, pred, out);
    }
}

// Largest non-empty <article>, else <main> / role=main, else <body>, else the whole tree.
const Node* content_root(const Node* root) {
    for (auto pred : {std::function<bool(const Node*)>([](const Node* n) { return n->tag == "article"; }),
                      std::function<bool(const Node*)>(
                          [](const Node* n) { return n->tag == "main" || attr(n, "role") == "main"; }),
                      std::function<bool(const Node*)>([](const Node* n) { return n->tag == "body"; })}) {
        std::vector<const Node*> found;
        find_all(root, pred, found);
        const Node* best = nullptr;
        std::size_t best_size = 0;
        for (const Node* n : found) {
            auto size = content_size(n);
            if (size > best_size) {
                best = n;
                best_size = size;
            }
        }
        if (best) {
            return best;
        }
    }
    return root;
}

}  // namespace

std::string extract_main_text(std::string_view html_bytes, std::string_view content_type) {
    auto decoded = decode_document(html_bytes, content_type);
    if (!decoded || decoded->empty()) {
        return "";
    }
    Parser parser(*decoded);
    const Node* root = parser.parse();
    auto storage = parser.release();
    BlockCollector collector;
    collector.walk(content_root(root), false);
    return collector.finish();
}

}  // namespace probegen::ingest
