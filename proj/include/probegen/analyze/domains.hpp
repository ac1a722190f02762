#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "probegen/analyze/psl.hpp"

namespace probegen::analyze {

using DomainSet = std::set<DomainKey>;

enum class Novelty { known, new_domain };

std::string_view to_string(Novelty n);

// known iff the domain appears in the source-list domain set.
std::map<DomainKey, Novelty> partition_new(const DomainSet& probe_domains, const DomainSet& source_domains);

// PLDs of a URL list; URLs without a registrable domain are skipped.
DomainSet domains_of(const std::vector<std::string>& urls, const PublicSuffixList& psl);

struct Jaccard {
    double value = 0.0;
    bool both_empty = false;  // value is 1 by convention
};

// |a n b| / |a u b|; two empty sets give 1 with the flag set.
Jaccard jaccard(const DomainSet& a, const DomainSet& b);

struct JaccardMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<Jaccard>> cells;  // cells[i][j] == cells[j][i]
};

JaccardMatrix jaccard_matrix(const std::map<std::string, DomainSet>& sets);

// Plot-ready matrix: header row of labels, one row per label, values with
// four decimals; cells over two empty sets are marked with '*'.
std::string render_matrix_tsv(const JaccardMatrix& m);

}  // namespace probegen::analyze
