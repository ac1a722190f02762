#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "probegen/probe/outcome.hpp"

namespace probegen::aggregate {

using probe::ResponseClass;

struct ConsistencyRule {
    double threshold = 0.95;
    bool strict = false;  // true: share must exceed the threshold
};

// Per-URL result at one vantage over all recorded runs.
struct UrlRunSummary {
    std::string url;
    std::string vantage_id;
    std::map<ResponseClass, int> counts;
    int n_runs = 0;
    std::optional<ResponseClass> consistent;
    std::map<int, int> http_codes;  // status -> runs
    std::map<int, int> exit_codes;  // transport exit code -> runs
    Timestamp first_seen{};
    Timestamp last_seen{};
};

Json to_json(const UrlRunSummary& s);
UrlRunSummary url_run_summary_from_json(const Json& j);

// Folds one URL's outcomes at one vantage. `consistent` is the most frequent
// class when its share of recorded runs meets the rule. Throws
// std::invalid_argument on an empty span or mixed url/vantage.
UrlRunSummary summarize(std::span<const probe::FetchOutcome> outcomes, const ConsistencyRule& rule = {});

// Groups a whole outcome log by (vantage, url) and summarizes each group,
// ordered by vantage then url. Repeated (url, vantage, run) rows keep the first.
std::vector<UrlRunSummary> summarize_all(const std::vector<probe::FetchOutcome>& outcomes,
                                         const ConsistencyRule& rule = {});

struct BaselineSet {
    std::map<std::string, ResponseClass> entries;
};

// A URL enters the baseline when every baseline vantage has a consistent
// result for it and all of them agree.
BaselineSet build_baseline(const std::vector<UrlRunSummary>& summaries,
                           const std::vector<std::string>& baseline_vantages);

struct DiffRecord {
    std::string url;
    std::string vantage_id;
    ResponseClass cls = ResponseClass::Accessible;
    std::optional<ResponseClass> baseline_class;
};

Json to_json(const DiffRecord& d);
DiffRecord diff_record_from_json(const Json& j);

// Inconsistent -> none; same class as baseline -> none; different class ->
// diff with baseline class; absent from baseline -> diff without one.
std::optional<DiffRecord> diff(const UrlRunSummary& summary, const BaselineSet& baseline);

// Diffs for every summary at a non-baseline vantage.
std::vector<DiffRecord> diff_all(const std::vector<UrlRunSummary>& summaries, const BaselineSet& baseline,
                                 const std::vector<std::string>& baseline_vantages);

}  // namespace probegen::aggregate
