#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "probegen/common/error.hpp"

namespace probegen::analyze {

class NoRegistrableDomain : public Error {
public:
    using Error::Error;
};

// Public-suffix rules (standard list format: '//' comments, '*' wildcards,
// '!' exceptions). Rules and hosts are compared in their ASCII (punycode)
// form, so Unicode and punycoded hosts resolve alike.
class PublicSuffixList {
public:
    static PublicSuffixList load(const std::filesystem::path& path);
    static PublicSuffixList load_default();
    static PublicSuffixList from_string(std::string_view rules);

    // Registrable domain: the matched public suffix plus one label, in the
    // host's own (lowercased) script. Throws NoRegistrableDomain when the host
    // is itself a public suffix or is malformed (empty labels, leading dot).
    std::string registrable_domain(std::string_view host) const;

    // Public suffix under the prevailing rule (the implicit "*" rule when none matches).
    std::string public_suffix(std::string_view host) const;

    std::size_t size() const { return rules_.size() + wildcards_.size() + exceptions_.size(); }

private:
    std::size_t suffix_labels(const std::vector<std::string>& ascii_labels) const;

    std::unordered_set<std::string> rules_;       // "co.uk"
    std::unordered_set<std::string> wildcards_;   // "*.ck" stored as "ck"
    std::unordered_set<std::string> exceptions_;  // "!www.ck" stored as "www.ck"
};

// Pay-level domain of a host. IP literals map to themselves.
struct DomainKey {
    std::string pld;
    auto operator<=>(const DomainKey&) const = default;
};

DomainKey pld(std::string_view host, const PublicSuffixList& psl);

// PLD of a URL's host; nullopt when the URL has no host or no registrable domain.
std::optional<DomainKey> pld_of_url(std::string_view url, const PublicSuffixList& psl);

}  // namespace probegen::analyze
