#pragma once

#include <set>
#include <string>
#include <vector>

#include "probegen/aggregate/summary.hpp"
#include "probegen/analyze/ooni.hpp"
#include "probegen/analyze/psl.hpp"

namespace probegen::analyze {

enum class EvidenceClass {
    inaccessible,  // consistently Inaccessible where the baseline was not
    server_side,   // consistently Error where the baseline differed
};

std::string_view to_string(EvidenceClass c);

struct Evidence {
    std::string vantage_id;
    std::string url;
    probe::ResponseClass curl_class = probe::ResponseClass::Inaccessible;
    std::optional<probe::ResponseClass> baseline_class;
    AnomalyKind ooni_kind = AnomalyKind::dns;
    double span_days = 0;
    int months_consistent = 0;  // whole 30-day months
};

struct SuspectedBlocked {
    DomainKey domain;
    std::set<std::string> vantages;
    std::vector<Evidence> evidence;  // ordered by vantage, then url
    EvidenceClass evidence_class = EvidenceClass::inaccessible;  // inaccessible when any evidence is
};

Json to_json(const SuspectedBlocked& s);

struct SuspectedOptions {
    double min_span_days = 120;
};

// A domain is flagged when one of its URLs has a diff at some vantage that is
// Inaccessible (or Error against a differing baseline class), held
// consistently for at least min_span_days, and OONI reports an agreeing
// anomaly for that URL at that vantage. Evidence is merged per domain.
std::vector<SuspectedBlocked> suspected_blocked(const std::vector<aggregate::DiffRecord>& diffs,
                                                const std::vector<aggregate::UrlRunSummary>& summaries,
                                                const std::vector<OoniRecord>& ooni, const PublicSuffixList& psl,
                                                const SuspectedOptions& options = {});

struct Disagreement {
    std::string url;
    std::string domain;
    std::string vantage_id;
    probe::ResponseClass curl_class = probe::ResponseClass::Accessible;
    OoniVerdict ooni_verdict = OoniVerdict::ok;
    std::optional<AnomalyKind> ooni_kind;
};

Json to_json(const Disagreement& d);

// Consistent curl results whose OONI measurement at the same vantage does not
// concur (e.g. Error with OONI ok: server-side blocking of automated clients).
// Failed OONI measurements carry no verdict and are left out.
std::vector<Disagreement> disagreement_report(const std::vector<aggregate::UrlRunSummary>& summaries,
                                              const std::vector<OoniRecord>& ooni, const PublicSuffixList& psl);

}  // namespace probegen::analyze
