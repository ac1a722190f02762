#include "probegen/analyze/domains.hpp"

#include <algorithm>
#include <cstdio>
#include <iterator>

namespace probegen::analyze {

std::string_view to_string(Novelty n) { return n == Novelty::known ? "known" : "new"; }

std::map<DomainKey, Novelty> partition_new(const DomainSet& probe_domains, const DomainSet& source_domains) {
    std::map<DomainKey, Novelty> out;
    for (const auto& d : probe_domains) {
        out[d] = source_domains.contains(d) ? Novelty::known : Novelty::new_domain;
    }
    return out;
}

DomainSet domains_of(const std::vector<std::string>& urls, const PublicSuffixList& psl) {
    DomainSet out;
    for (const auto& u : urls) {
        if (auto d = pld_of_url(u, psl)) {
            out.insert(std::move(*d));
        }
    }
    return out;
}

Jaccard jaccard(const DomainSet& a, const DomainSet& b) {
    if (a.empty() && b.empty()) {
        return {1.0, true};
    }
    std::size_t common = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib) {
            ++ia;
        } else if (*ib < *ia) {
            ++ib;
        } else {
            ++common;
            ++ia;
            ++ib;
        }
    }
    std::size_t uni = a.size() + b.size() - common;
    return {static_cast<double>(common) / static_cast<double>(uni), false};
}

JaccardMatrix jaccard_matrix(const std::map<std::string, DomainSet>& sets) {
    JaccardMatrix m;
    std::vector<const DomainSet*> ptrs;
    for (const auto& [label, set] : sets) {
        m.labels.push_back(label);
        ptrs.push_back(&set);
    }
    std::size_t n = ptrs.size();
    m.cells.assign(n, std::vector<Jaccard>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            m.cells[i][j] = m.cells[j][i] = jaccard(*ptrs[i], *ptrs[j]);
        }
    }
    return m;
}

std::string render_matrix_tsv(const JaccardMatrix& m) {
    std::string out = "location";
    for (const auto& l : m.labels) {
        out += "\t" + l;
    }
    out += "\n";
    char buf[32];
    for (std::size_t i = 0; i < m.labels.size(); ++i) {
        out += m.labels[i];
        for (const auto& c : m.cells[i]) {
            std::snprintf(buf, sizeof buf, "\t%.4f%s", c.value, c.both_empty ? "*" : "");
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace probegen::analyze
