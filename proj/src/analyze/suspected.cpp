#include "probegen/analyze/suspected.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <tuple>

#include "probegen/common/url.hpp"

namespace probegen::analyze {

std::string_view to_string(EvidenceClass c) {
    return c == EvidenceClass::inaccessible ? "inaccessible" : "server_side";
}

namespace {

using Key = std::pair<std::string, std::string>;  // (vantage, url)

std::map<Key, const OoniRecord*> index_ooni(const std::vector<OoniRecord>& ooni) {
    std::map<Key, const OoniRecord*> out;
    for (const auto& r : ooni) {
        out[{r.vantage_id, r.url}] = &r;
    }
    return out;
}

std::string domain_label(const std::string& url, const PublicSuffixList& psl) {
    auto d = pld_of_url(url, psl);
    return d ? d->pld : host_of(url);
}

}  // namespace

Json to_json(const SuspectedBlocked& s) {
    Json j;
    j["domain"] = s.domain.pld;
    j["evidence_class"] = std::string(to_string(s.evidence_class));
    j["vantages"] = s.vantages;
    Json ev = Json::array();
    for (const auto& e : s.evidence) {
        ev.push_back({{"vantage", e.vantage_id},
                      {"url", e.url},
                      {"curl_class", std::string(probe::to_string(e.curl_class))},
                      {"baseline_class", e.baseline_class ? Json(std::string(probe::to_string(*e.baseline_class)))
                                                          : Json(nullptr)},
                      {"ooni_kind", std::string(to_string(e.ooni_kind))},
                      {"span_days", e.span_days},
                      {"months_consistent", e.months_consistent}});
    }
    j["evidence"] = std::move(ev);
    return j;
}

std::vector<SuspectedBlocked> suspected_blocked(const std::vector<aggregate::DiffRecord>& diffs,
                                                const std::vector<aggregate::UrlRunSummary>& summaries,
                                                const std::vector<OoniRecord>& ooni, const PublicSuffixList& psl,
                                                const SuspectedOptions& options) {
    std::map<Key, const aggregate::UrlRunSummary*> by_key;
    for (const auto& s : summaries) {
        by_key[{s.vantage_id, s.url}] = &s;
    }
    auto ooni_index = index_ooni(ooni);
    std::map<DomainKey, SuspectedBlocked> flagged;

    for (const auto& d : diffs) {
        bool inaccessible = d.cls == probe::ResponseClass::Inaccessible;
        bool server_side = d.cls == probe::ResponseClass::Error && d.baseline_class.has_value();
        if (!inaccessible && !server_side) {
            continue;
        }
        auto s = by_key.find({d.vantage_id, d.url});
        if (s == by_key.end() || s->second->consistent != d.cls) {
            continue;
        }
        double span = days_between(s->second->first_seen, s->second->last_seen);
        if (span + 1e-9 < options.min_span_days) {
            continue;
        }
        auto o = ooni_index.find({d.vantage_id, d.url});
        if (o == ooni_index.end() || !ooni_agreement(d.cls, *o->second)) {
            continue;
        }
        auto domain = pld_of_url(d.url, psl);
        if (!domain) {
            continue;
        }
        auto& entry = flagged[*domain];
        entry.domain = *domain;
        entry.vantages.insert(d.vantage_id);
        entry.evidence.push_back({d.vantage_id, d.url, d.cls, d.baseline_class, *o->second->kind, span,
                                  static_cast<int>(std::floor(span / 30.0))});
    }

    std::vector<SuspectedBlocked> out;
    for (auto& [domain, entry] : flagged) {
        std::sort(entry.evidence.begin(), entry.evidence.end(), [](const Evidence& a, const Evidence& b) {
            return std::tie(a.vantage_id, a.url) < std::tie(b.vantage_id, b.url);
        });
        bool any_inaccessible = std::any_of(entry.evidence.begin(), entry.evidence.end(), [](const Evidence& e) {
            return e.curl_class == probe::ResponseClass::Inaccessible;
        });
        entry.evidence_class = any_inaccessible ? EvidenceClass::inaccessible : EvidenceClass::server_side;
        out.push_back(std::move(entry));
    }
    return out;
}

Json to_json(const Disagreement& d) {
    Json j;
    j["url"] = d.url;
    j["domain"] = d.domain;
    j["vantage"] = d.vantage_id;
    j["curl_class"] = std::string(probe::to_string(d.curl_class));
    j["ooni_verdict"] = std::string(to_string(d.ooni_verdict));
    j["ooni_kind"] = d.ooni_kind ? Json(std::string(to_string(*d.ooni_kind))) : Json(nullptr);
    return j;
}

std::vector<Disagreement> disagreement_report(const std::vector<aggregate::UrlRunSummary>& summaries,
                                              const std::vector<OoniRecord>& ooni, const PublicSuffixList& psl) {
    auto ooni_index = index_ooni(ooni);
    std::vector<Disagreement> out;
    for (const auto& s : summaries) {
        if (!s.consistent) {
            continue;
        }
        auto o = ooni_index.find({s.vantage_id, s.url});
        if (o == ooni_index.end() || o->second->verdict == OoniVerdict::error ||
            ooni_agreement(*s.consistent, *o->second)) {
            continue;
        }
        out.push_back({s.url, domain_label(s.url, psl), s.vantage_id, *s.consistent, o->second->verdict,
                       o->second->kind});
    }
    std::sort(out.begin(), out.end(), [](const Disagreement& a, const Disagreement& b) {
        return std::tie(a.vantage_id, a.domain, a.url) < std::tie(b.vantage_id, b.domain, b.url);
    });
    return out;
}

}  // namespace probegen::analyze
