#include "probegen/analyze/psl.hpp"

#include <unicode/idna.h>
#include <unicode/unistr.h>

#include <memory>
#include <optional>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/common/paths.hpp"
#include "probegen/common/text.hpp"
#include "probegen/common/url.hpp"

namespace probegen::analyze {

namespace {

const icu::IDNA& uts46() {
    static std::unique_ptr<icu::IDNA> idna = [] {
        UErrorCode status = U_ZERO_ERROR;
        std::unique_ptr<icu::IDNA> p(icu::IDNA::createUTS46Instance(UIDNA_NONTRANSITIONAL_TO_ASCII, status));
        if (U_FAILURE(status)) {
            throw ConfigError("cannot create UTS46 converter");
        }
        return p;
    }();
    return *idna;
}

std::string to_ascii_label(std::string_view label) {
    bool ascii = true;
    for (unsigned char c : label) {
        if (c >= 0x80) {
            ascii = false;
            break;
        }
    }
    if (ascii) {
        return text::ascii_lower(label);
    }
    UErrorCode status = U_ZERO_ERROR;
    icu::IDNAInfo info;
    std::string out;
    icu::StringByteSink<std::string> sink(&out);
    uts46().labelToASCII_UTF8(icu::StringPiece(label.data(), static_cast<int32_t>(label.size())), sink, info,
                              status);
    if (U_FAILURE(status) || info.hasErrors()) {
        return text::to_lower(label);
    }
    return out;
}

std::vector<std::string> split_labels(std::string_view host) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        auto dot = host.find('.', start);
        out.emplace_back(host.substr(start, dot - start));
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return out;
}

std::string join_from(const std::vector<std::string>& labels, std::size_t from) {
    std::string out;
    for (std::size_t i = from; i < labels.size(); ++i) {
        if (!out.empty()) {
            out.push_back('.');
        }
        out += labels[i];
    }
    return out;
}

std::string ascii_rule(std::string_view rule) {
    auto labels = split_labels(rule);
    for (auto& l : labels) {
        if (l != "*") {
            l = to_ascii_label(l);
        }
    }
    return join_from(labels, 0);
}

bool is_ip_literal(std::string_view host) {
    if (!host.empty() && host.front() == '[') {
        return true;
    }
    int dots = 0;
    for (char c : host) {
        if (c == '.') {
            ++dots;
        } else if (c < '0' || c > '9') {
            return false;
        }
    }
    return dots == 3;
}

}  // namespace

PublicSuffixList PublicSuffixList::from_string(std::string_view rules) {
    PublicSuffixList psl;
    std::size_t start = 0;
    while (start < rules.size()) {
        auto end = rules.find('\n', start);
        if (end == std::string_view::npos) {
            end = rules.size();
        }
        auto line = rules.substr(start, end - start);
        start = end + 1;
        // A rule is the first whitespace-delimited token of the line.
        auto ws = line.find_first_of(" \t\r");
        line = line.substr(0, ws);
        if (line.empty() || line.starts_with("//")) {
            continue;
        }
        if (line.front() == '!') {
            psl.exceptions_.insert(ascii_rule(line.substr(1)));
        } else if (line.starts_with("*.")) {
            psl.wildcards_.insert(ascii_rule(line.substr(2)));
        } else {
            psl.rules_.insert(ascii_rule(line));
        }
    }
    if (psl.size() == 0) {
        throw ConfigError("public suffix list has no rules");
    }
    return psl;
}

PublicSuffixList PublicSuffixList::load(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) {
        throw ConfigError("cannot read public suffix list " + path.string());
    }
    return from_string(read_file(path));
}

PublicSuffixList PublicSuffixList::load_default() { return load(data_dir() / "psl" / "public_suffix_list.dat"); }

std::size_t PublicSuffixList::suffix_labels(const std::vector<std::string>& labels) const {
    const std::size_t n = labels.size();
    // Exception rules win over everything; the suffix is the rule minus its
    // leftmost label.
    for (std::size_t i = 0; i < n; ++i) {
        if (exceptions_.contains(join_from(labels, i))) {
            return n - i - 1;
        }
    }
    // Longest matching rule; "*.x" matches any one label in front of x.
    for (std::size_t i = 0; i < n; ++i) {
        if (rules_.contains(join_from(labels, i)) || (i + 1 < n && wildcards_.contains(join_from(labels, i + 1)))) {
            return n - i;
        }
    }
    return 1;
}

std::string PublicSuffixList::public_suffix(std::string_view host) const {
    auto labels = split_labels(text::to_lower(host));
    std::vector<std::string> ascii;
    for (const auto& l : labels) {
        ascii.push_back(to_ascii_label(l));
    }
    return join_from(labels, labels.size() - std::min(labels.size(), suffix_labels(ascii)));
}

std::string PublicSuffixList::registrable_domain(std::string_view host) const {
    std::string h = text::to_lower(host);
    if (!h.empty() && h.back() == '.') {
        h.pop_back();
    }
    if (h.empty()) {
        throw NoRegistrableDomain("no registrable domain: empty host");
    }
    auto labels = split_labels(h);
    std::vector<std::string> ascii;
    for (const auto& l : labels) {
        if (l.empty()) {
            throw NoRegistrableDomain("no registrable domain: empty label in '" + std::string(host) + "'");
        }
        ascii.push_back(to_ascii_label(l));
    }
    std::size_t k = suffix_labels(ascii);
    if (labels.size() <= k) {
        throw NoRegistrableDomain("no registrable domain: '" + std::string(host) + "' is a public suffix");
    }
    return join_from(labels, labels.size() - k - 1);
}

DomainKey pld(std::string_view host, const PublicSuffixList& psl) {
    if (is_ip_literal(host)) {
        return {std::string(host)};
    }
    return {psl.registrable_domain(host)};
}

std::optional<DomainKey> pld_of_url(std::string_view url, const PublicSuffixList& psl) {
    auto host = host_of(url);
    if (host.empty()) {
        return std::nullopt;
    }
    try {
        return pld(host, psl);
    } catch (const NoRegistrableDomain&) {
        return std::nullopt;
    }
}

}  // namespace probegen::analyze
