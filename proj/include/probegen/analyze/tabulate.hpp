#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probegen/aggregate/summary.hpp"
#include "probegen/analyze/domains.hpp"
#include "probegen/analyze/ooni.hpp"

namespace probegen::analyze {

struct Table {
    std::string name;  // file stem, e.g. "counts"
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

// Space-aligned columns under a title line.
std::string render_text(const Table& t);
// Tab-separated, header first.
std::string render_tsv(const Table& t);

// "1234 (56.78%)"; "0 (0.00%)" when the total is zero.
std::string count_pct(std::size_t count, std::size_t total);

struct TabulateInput {
    std::vector<aggregate::UrlRunSummary> summaries;
    std::vector<aggregate::DiffRecord> diffs;
    aggregate::BaselineSet baseline;
    std::vector<std::string> vantages;           // row order; baseline vantages first
    std::vector<std::string> baseline_vantages;
    std::vector<OoniRecord> ooni;
    // Restricts every table to URLs of these domains (e.g. new domains only).
    std::optional<DomainSet> domain_filter;
    double min_code_share = 0.05;  // code columns kept when some vantage reaches this share
};

struct Report {
    std::vector<Table> tables;
    JaccardMatrix inaccessible_jaccard;
    JaccardMatrix error_jaccard;
    Json summary;  // machine-readable per-vantage counts
};

// Per vantage, URLs and domains with a consistent result in each class. A
// domain counts in every class one of its URLs reached, so domain
// percentages may sum past 100.
Table counts_table(const TabulateInput& in, const PublicSuffixList& psl);

// Composition of each vantage's diffs by class, under a baseline row.
Table diff_table(const TabulateInput& in, const PublicSuffixList& psl);

// Share of each class's consistent URLs/domains that differ from the baseline.
Table delta_table(const TabulateInput& in, const PublicSuffixList& psl);

// Share of each class's diffs that come from new domains.
Table new_share_table(const TabulateInput& in, const DomainSet& source_domains, const PublicSuffixList& psl);

// Dominant exit code (resp. HTTP status) of URLs in Inaccessible (resp.
// Error) diffs, as percentages per vantage.
Table exit_code_table(const TabulateInput& in);
Table error_code_table(const TabulateInput& in);

// OONI anomaly kinds for URLs in Inaccessible/Error diffs.
Table anomaly_table(const TabulateInput& in, const PublicSuffixList& psl);

// Everything above plus Jaccard matrices over each vantage's Inaccessible
// and Error diff domains. `source_domains` enables the new-share table.
Report tabulate(const TabulateInput& in, const PublicSuffixList& psl,
                const std::optional<DomainSet>& source_domains = std::nullopt);

}  // namespace probegen::analyze
