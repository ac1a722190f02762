#include "probegen/analyze/tabulate.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <unordered_map>

#include "probegen/common/url.hpp"

namespace probegen::analyze {

using probe::ResponseClass;

namespace {

constexpr ResponseClass kClasses[] = {ResponseClass::Accessible, ResponseClass::Inaccessible, ResponseClass::Error};

std::string pct(double num, double den) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", den > 0 ? 100.0 * num / den : 0.0);
    return buf;
}

// URL -> domain, with the optional filter applied.
class DomainIndex {
public:
    DomainIndex(const PublicSuffixList& psl, const std::optional<DomainSet>& filter) : psl_(psl), filter_(filter) {}

    const DomainKey* operator()(const std::string& url) {
        auto it = cache_.find(url);
        if (it == cache_.end()) {
            auto d = pld_of_url(url, psl_);
            if (!d) {
                auto host = host_of(url);
                d = host.empty() ? std::nullopt : std::optional<DomainKey>(DomainKey{host});
            }
            if (d && filter_ && !filter_->contains(*d)) {
                d.reset();
            }
            it = cache_.emplace(url, std::move(d)).first;
        }
        return it->second ? &*it->second : nullptr;
    }

private:
    const PublicSuffixList& psl_;
    const std::optional<DomainSet>& filter_;
    std::unordered_map<std::string, std::optional<DomainKey>> cache_;
};

struct ClassTally {
    std::map<ResponseClass, std::size_t> urls;
    std::map<ResponseClass, std::set<DomainKey>> domains;
    std::size_t url_total = 0;
    std::set<DomainKey> domain_total;

    void add(ResponseClass c, const DomainKey& d) {
        ++urls[c];
        domains[c].insert(d);
        ++url_total;
        domain_total.insert(d);
    }

    std::vector<std::string> row(const std::string& label) const {
        std::vector<std::string> r{label};
        for (auto c : kClasses) {
            auto it = urls.find(c);
            r.push_back(count_pct(it == urls.end() ? 0 : it->second, url_total));
        }
        r.push_back(std::to_string(url_total));
        for (auto c : kClasses) {
            auto it = domains.find(c);
            r.push_back(count_pct(it == domains.end() ? 0 : it->second.size(), domain_total.size()));
        }
        r.push_back(std::to_string(domain_total.size()));
        return r;
    }
};

std::vector<std::string> class_header(const std::string& first) {
    return {first,        "URL Accessible",    "URL Inaccessible", "URL Error", "URL Total",
            "Dom Accessible", "Dom Inaccessible", "Dom Error",        "Dom Total"};
}

std::vector<std::string> non_baseline(const TabulateInput& in) {
    std::set<std::string> base(in.baseline_vantages.begin(), in.baseline_vantages.end());
    std::vector<std::string> out;
    for (const auto& v : in.vantages) {
        if (!base.contains(v)) {
            out.push_back(v);
        }
    }
    return out;
}

template <typename CodeMap>
Table code_table(const TabulateInput& in, ResponseClass cls, CodeMap aggregate::UrlRunSummary::*codes,
                 const std::string& name, const std::string& title, const std::string& corner) {
    std::map<std::pair<std::string, std::string>, const aggregate::UrlRunSummary*> by_key;
    for (const auto& s : in.summaries) {
        by_key[{s.vantage_id, s.url}] = &s;
    }
    auto vantages = non_baseline(in);
    std::map<std::string, std::map<int, std::size_t>> dominant;
    std::map<std::string, std::size_t> totals;
    for (const auto& d : in.diffs) {
        if (d.cls != cls) {
            continue;
        }
        auto it = by_key.find({d.vantage_id, d.url});
        if (it == by_key.end() || (it->second->*codes).empty()) {
            continue;
        }
        const auto& m = it->second->*codes;
        auto best = std::max_element(m.begin(), m.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; });
        ++dominant[d.vantage_id][best->first];
        ++totals[d.vantage_id];
    }
    std::map<int, std::size_t> overall;
    std::set<int> keep;
    for (const auto& [v, m] : dominant) {
        for (const auto& [code, n] : m) {
            overall[code] += n;
            if (static_cast<double>(n) >= in.min_code_share * totals[v]) {
                keep.insert(code);
            }
        }
    }
    std::vector<int> columns(keep.begin(), keep.end());
    std::stable_sort(columns.begin(), columns.end(), [&](int a, int b) { return overall[a] > overall[b]; });
    Table t{name, title, {corner}, {}};
    for (int c : columns) {
        t.header.push_back(std::to_string(c));
    }
    t.header.push_back("URLs");
    for (const auto& v : vantages) {
        std::vector<std::string> row{v};
        for (int c : columns) {
            auto& m = dominant[v];
            row.push_back(pct(m.contains(c) ? static_cast<double>(m[c]) : 0.0, static_cast<double>(totals[v])));
        }
        row.push_back(std::to_string(totals[v]));
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

std::string count_pct(std::size_t count, std::size_t total) {
    return std::to_string(count) + " (" + pct(static_cast<double>(count), static_cast<double>(total)) + "%)";
}

std::string render_tsv(const Table& t) {
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += (i ? "\t" : "") + cells[i];
        }
        out += "\n";
    };
    line(t.header);
    for (const auto& r : t.rows) {
        line(r);
    }
    return out;
}

std::string render_text(const Table& t) {
    std::vector<std::size_t> width(t.header.size(), 0);
    auto measure = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
            width[i] = std::max(width[i], cells[i].size());
        }
    };
    measure(t.header);
    for (const auto& r : t.rows) {
        measure(r);
    }
    std::string out = t.title + "\n";
    auto line = [&](const std::vector<std::string>& cells) {
        std::string l;
        for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
            if (i == 0) {
                l += cells[i] + std::string(width[i] - cells[i].size(), ' ');
            } else {
                l += "  " + std::string(width[i] - cells[i].size(), ' ') + cells[i];
            }
        }
        out += l + "\n";
    };
    line(t.header);
    std::size_t total = 0;
    for (auto w : width) {
        total += w + 2;
    }
    out += std::string(total > 2 ? total - 2 : 0, '-') + "\n";
    for (const auto& r : t.rows) {
        line(r);
    }
    return out;
}

Table counts_table(const TabulateInput& in, const PublicSuffixList& psl) {
    DomainIndex domain(psl, in.domain_filter);
    std::map<std::string, ClassTally> tally;
    for (const auto& s : in.summaries) {
        if (!s.consistent) {
            continue;
        }
        if (const auto* d = domain(s.url)) {
            tally[s.vantage_id].add(*s.consistent, *d);
        }
    }
    Table t{"counts", "URLs and domains with consistent results per location", class_header("Location"), {}};
    for (const auto& v : in.vantages) {
        t.rows.push_back(tally[v].row(v));
    }
    return t;
}

Table diff_table(const TabulateInput& in, const PublicSuffixList& psl) {
    DomainIndex domain(psl, in.domain_filter);
    ClassTally base;
    for (const auto& [url, cls] : in.baseline.entries) {
        if (const auto* d = domain(url)) {
            base.add(cls, *d);
        }
    }
    std::map<std::string, ClassTally> tally;
    for (const auto& d : in.diffs) {
        if (const auto* dom = domain(d.url)) {
            tally[d.vantage_id].add(d.cls, *dom);
        }
    }
    Table t{"diff", "Responses that differ from the baseline, by response type", class_header("Location"), {}};
    t.rows.push_back(base.row("Baseline"));
    for (const auto& v : non_baseline(in)) {
        t.rows.push_back(tally[v].row(v));
    }
    return t;
}

Table delta_table(const TabulateInput& in, const PublicSuffixList& psl) {
    DomainIndex domain(psl, in.domain_filter);
    std::map<std::string, ClassTally> all;
    std::map<std::string, ClassTally> differing;
    std::set<std::pair<std::string, std::string>> diff_keys;
    for (const auto& d : in.diffs) {
        diff_keys.insert({d.vantage_id, d.url});
    }
    for (const auto& s : in.summaries) {
        if (!s.consistent) {
            continue;
        }
        if (const auto* d = domain(s.url)) {
            all[s.vantage_id].add(*s.consistent, *d);
            if (diff_keys.contains({s.vantage_id, s.url})) {
                differing[s.vantage_id].add(*s.consistent, *d);
            }
        }
    }
    Table t{"delta",
            "Percentage of URLs and domains per response type that differ from the baseline",
            {"Location", "URL Accessible %", "URL Inaccessible %", "URL Error %", "URL Total %", "Dom Accessible %",
             "Dom Inaccessible %", "Dom Error %", "Dom Total %"},
            {}};
    for (const auto& v : non_baseline(in)) {
        auto& a = all[v];
        auto& d = differing[v];
        std::vector<std::string> row{v};
        for (auto c : kClasses) {
            row.push_back(pct(static_cast<double>(d.urls[c]), static_cast<double>(a.urls[c])));
        }
        row.push_back(pct(static_cast<double>(d.url_total), static_cast<double>(a.url_total)));
        for (auto c : kClasses) {
            row.push_back(pct(static_cast<double>(d.domains[c].size()), static_cast<double>(a.domains[c].size())));
        }
        row.push_back(pct(static_cast<double>(d.domain_total.size()), static_cast<double>(a.domain_total.size())));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table new_share_table(const TabulateInput& in, const DomainSet& source_domains, const PublicSuffixList& psl) {
    DomainIndex domain(psl, in.domain_filter);
    std::map<std::string, ClassTally> all;
    std::map<std::string, ClassTally> fresh;
    for (const auto& d : in.diffs) {
        if (const auto* dom = domain(d.url)) {
            all[d.vantage_id].add(d.cls, *dom);
            if (!source_domains.contains(*dom)) {
                fresh[d.vantage_id].add(d.cls, *dom);
            }
        }
    }
    Table t{"new_share",
            "Percentage of differing URLs and domains that come from domains outside the source list",
            {"Location", "URL Accessible %", "URL Inaccessible %", "URL Error %", "URL Total %", "Dom Accessible %",
             "Dom Inaccessible %", "Dom Error %", "Dom Total %"},
            {}};
    for (const auto& v : non_baseline(in)) {
        auto& a = all[v];
        auto& n = fresh[v];
        std::vector<std::string> row{v};
        for (auto c : kClasses) {
            row.push_back(pct(static_cast<double>(n.urls[c]), static_cast<double>(a.urls[c])));
        }
        row.push_back(pct(static_cast<double>(n.url_total), static_cast<double>(a.url_total)));
        for (auto c : kClasses) {
            row.push_back(pct(static_cast<double>(n.domains[c].size()), static_cast<double>(a.domains[c].size())));
        }
        row.push_back(pct(static_cast<double>(n.domain_total.size()), static_cast<double>(a.domain_total.size())));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table exit_code_table(const TabulateInput& in) {
    return code_table(in, ResponseClass::Inaccessible, &aggregate::UrlRunSummary::exit_codes, "exit_codes",
                      "Exit codes of URLs inaccessible only at this location (%)", "Location \\ exit code");
}

Table error_code_table(const TabulateInput& in) {
    return code_table(in, ResponseClass::Error, &aggregate::UrlRunSummary::http_codes, "error_codes",
                      "HTTP status of URLs returning errors only at this location (%)", "Location \\ status");
}

Table anomaly_table(const TabulateInput& in, const PublicSuffixList& psl) {
    DomainIndex domain(psl, in.domain_filter);
    std::map<std::pair<std::string, std::string>, const OoniRecord*> ooni;
    for (const auto& r : in.ooni) {
        ooni[{r.vantage_id, r.url}] = &r;
    }
    constexpr AnomalyKind kinds[] = {AnomalyKind::dns, AnomalyKind::tcp_ip, AnomalyKind::http_failure,
                                     AnomalyKind::http_diff};
    struct Tally {
        std::map<AnomalyKind, std::size_t> urls;
        std::map<AnomalyKind, std::set<DomainKey>> domains;
        std::size_t url_anomalies = 0;
        std::set<DomainKey> domain_anomalies;
        std::size_t tested = 0;
    };
    std::map<std::string, Tally> tally;
    for (const auto& d : in.diffs) {
        if (d.cls == ResponseClass::Accessible) {
            continue;
        }
        auto it = ooni.find({d.vantage_id, d.url});
        const auto* dom = domain(d.url);
        if (it == ooni.end() || !dom) {
            continue;
        }
        auto& t = tally[d.vantage_id];
        ++t.tested;
        if (it->second->verdict == OoniVerdict::anomaly) {
            ++t.urls[*it->second->kind];
            t.domains[*it->second->kind].insert(*dom);
            ++t.url_anomalies;
            t.domain_anomalies.insert(*dom);
        }
    }
    Table t{"anomalies", "OONI anomaly kinds for URLs that differ from the baseline", {"Location"}, {}};
    for (auto k : kinds) {
        t.header.push_back("URL " + std::string(to_string(k)));
    }
    t.header.push_back("URL anomalies");
    for (auto k : kinds) {
        t.header.push_back("Dom " + std::string(to_string(k)));
    }
    t.header.push_back("Dom anomalies");
    t.header.push_back("URLs tested");
    for (const auto& v : non_baseline(in)) {
        auto& x = tally[v];
        std::vector<std::string> row{v};
        for (auto k : kinds) {
            row.push_back(count_pct(x.urls[k], x.url_anomalies));
        }
        row.push_back(std::to_string(x.url_anomalies));
        for (auto k : kinds) {
            row.push_back(count_pct(x.domains[k].size(), x.domain_anomalies.size()));
        }
        row.push_back(std::to_string(x.domain_anomalies.size()));
        row.push_back(std::to_string(x.tested));
        t.rows.push_back(std::move(row));
    }
    return t;
}

Report tabulate(const TabulateInput& in, const PublicSuffixList& psl, const std::optional<DomainSet>& source_domains) {
    Report r;
    r.tables.push_back(counts_table(in, psl));
    r.tables.push_back(diff_table(in, psl));
    r.tables.push_back(delta_table(in, psl));
    if (source_domains) {
        r.tables.push_back(new_share_table(in, *source_domains, psl));
    }
    r.tables.push_back(exit_code_table(in));
    r.tables.push_back(error_code_table(in));
    r.tables.push_back(anomaly_table(in, psl));

    DomainIndex domain(psl, in.domain_filter);
    std::map<std::string, DomainSet> inaccessible;
    std::map<std::string, DomainSet> errors;
    for (const auto& v : non_baseline(in)) {
        inaccessible[v];
        errors[v];
    }
    for (const auto& d : in.diffs) {
        if (const auto* dom = domain(d.url)) {
            if (d.cls == ResponseClass::Inaccessible) {
                inaccessible[d.vantage_id].insert(*dom);
            } else if (d.cls == ResponseClass::Error) {
                errors[d.vantage_id].insert(*dom);
            }
        }
    }
    r.inaccessible_jaccard = jaccard_matrix(inaccessible);
    r.error_jaccard = jaccard_matrix(errors);

    Json vantages = Json::object();
    std::map<std::string, std::map<std::string, std::size_t>> counts;
    for (const auto& s : in.summaries) {
        auto& c = counts[s.vantage_id];
        ++c["urls"];
        c[s.consistent ? std::string(probe::to_string(*s.consistent)) : "inconsistent"]++;
    }
    std::map<std::string, std::size_t> diff_counts;
    for (const auto& d : in.diffs) {
        ++diff_counts[d.vantage_id];
    }
    for (const auto& v : in.vantages) {
        Json j = Json::object();
        for (const char* k : {"urls", "Accessible", "Inaccessible", "Error", "inconsistent"}) {
            j[k] = counts[v][k];
        }
        j["diffs"] = diff_counts[v];
        vantages[v] = std::move(j);
    }
    r.summary = Json{{"vantages", std::move(vantages)}, {"baseline_urls", in.baseline.entries.size()}};
    return r;
}

}  // namespace probegen::analyze
