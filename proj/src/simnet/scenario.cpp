#include "probegen/simnet/scenario.hpp"

#include <algorithm>
#include <set>

#include "probegen/common/error.hpp"
#include "probegen/common/text.hpp"
#include "probegen/common/url.hpp"

namespace probegen::simnet {

namespace {

struct Name {
    std::string_view text;
    Mechanism value;
};

constexpr Name kMechanisms[] = {
    {"dns_nxdomain", Mechanism::dns_nxdomain},
    {"dns_forged_ip", Mechanism::dns_forged_ip},
    {"tcp_rst", Mechanism::tcp_rst},
    {"timeout", Mechanism::timeout},
    {"throttle", Mechanism::throttle},
    {"http_block_page", Mechanism::http_block_page},
    {"server_side_403_bots", Mechanism::server_side_403_bots},
};

[[noreturn]] void bad(const std::string& what) { throw ConfigError("scenario: " + what); }

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) {
        return fallback;
    }
    try {
        return it->get<T>();
    } catch (const Json::exception&) {
        bad(std::string("field '") + key + "' has the wrong type");
    }
}

OriginResponse origin_from(const Json& j, OriginResponse base) {
    if (!j.is_object()) {
        return base;
    }
    base.dead = get_or(j, "dead", base.dead);
    base.status = get_or(j, "status", base.status);
    base.delay_ms = get_or(j, "delay_ms", base.delay_ms);
    if (base.status < 100 || base.status > 599) {
        bad("origin status " + std::to_string(base.status) + " outside 100-599");
    }
    if (base.delay_ms < 0) {
        bad("negative origin delay");
    }
    return base;
}

BlockPolicy policy_from(const Json& j) {
    BlockPolicy p;
    const auto& m = j.at("match");
    if (!m.is_object() || m.size() != 1) {
        bad("policy 'match' must have exactly one of exact, pld, ip");
    }
    const auto& [key, value] = *m.items().begin();
    if (key == "exact") {
        p.matcher = MatcherKind::exact;
    } else if (key == "pld") {
        p.matcher = MatcherKind::pld;
    } else if (key == "ip") {
        p.matcher = MatcherKind::ip;
    } else {
        bad("unknown matcher '" + key + "'");
    }
    p.value = text::ascii_lower(value.get<std::string>());
    auto name = j.at("mechanism").get<std::string>();
    auto it = std::find_if(std::begin(kMechanisms), std::end(kMechanisms),
                           [&](const Name& n) { return n.text == name; });
    if (it == std::end(kMechanisms)) {
        bad("unknown mechanism '" + name + "'");
    }
    p.mechanism = it->value;
    if (p.mechanism == Mechanism::throttle) {
        p.param = get_or<long long>(j, "delay_ms", -1);
        if (p.param < 0) {
            bad("throttle needs a non-negative delay_ms");
        }
    } else if (p.mechanism == Mechanism::http_block_page) {
        p.param = get_or<long long>(j, "status", 200);
        if (p.param < 100 || p.param > 599) {
            bad("block page status outside 100-599");
        }
    }
    if (j.contains("probability") && !j["probability"].is_null()) {
        double prob = j["probability"].get<double>();
        if (!(prob > 0 && prob <= 1)) {
            bad("policy probability must lie in (0, 1]");
        }
        p.probability = prob;
    }
    return p;
}

}  // namespace

std::string_view to_string(MatcherKind k) {
    switch (k) {
        case MatcherKind::exact: return "exact";
        case MatcherKind::pld: return "pld";
        case MatcherKind::ip: return "ip";
    }
    return "exact";
}

std::string_view to_string(Mechanism m) {
    for (const auto& n : kMechanisms) {
        if (n.value == m) {
            return n.text;
        }
    }
    return "dns_nxdomain";
}

bool BlockPolicy::matches(const SimUrl& u) const {
    switch (matcher) {
        case MatcherKind::exact: return u.host == value;
        case MatcherKind::pld: return host_within(u.host, value);
        case MatcherKind::ip: return u.ip == value;
    }
    return false;
}

const SimUrl* Scenario::find_url(const std::string& url) const {
    auto it = url_index_.find(url);
    return it == url_index_.end() ? nullptr : &it->second;
}

const SimVantage& Scenario::vantage(const std::string& id) const {
    for (const auto& v : vantages) {
        if (v.id == id) {
            return v;
        }
    }
    throw ConfigError("scenario has no vantage '" + id + "'");
}

std::vector<std::string> Scenario::urls() const {
    std::vector<std::string> out;
    for (const auto& d : domains) {
        out.insert(out.end(), d.urls.begin(), d.urls.end());
    }
    return out;
}

void Scenario::index() {
    url_index_.clear();
    for (const auto& d : domains) {
        for (const auto& u : d.urls) {
            auto host = host_of(u);
            if (host.empty()) {
                bad("unparseable URL '" + u + "'");
            }
            if (!url_index_.emplace(u, SimUrl{u, host, d.name, d.ip, d.origin}).second) {
                bad("URL listed twice: " + u);
            }
        }
    }
}

Scenario scenario_from_json(const Json& j) {
    if (!j.is_object()) {
        bad("top level must be an object");
    }
    Scenario s;
    try {
        s.seed = get_or<std::uint64_t>(j, "seed", 0);
        s.tool_user_agent = get_or(j, "tool_user_agent", s.tool_user_agent);
        s.n_runs = get_or(j, "n_runs", s.n_runs);
        s.run_interval = std::chrono::hours(get_or<long long>(j, "run_interval_hours", 72));
        s.start = parse_utc(get_or<std::string>(j, "start", "2024-01-01T00:00:00Z"));
        if (s.n_runs < 1) {
            bad("n_runs must be at least 1");
        }

        std::map<std::string, OriginResponse> url_overrides;
        std::set<std::string> names;
        for (const auto& dj : j.at("domains")) {
            SimDomain d;
            d.name = text::ascii_lower(dj.at("name").get<std::string>());
            if (!names.insert(d.name).second) {
                bad("domain listed twice: " + d.name);
            }
            d.ip = get_or<std::string>(dj, "ip", "");
            d.origin = origin_from(dj.value("origin", Json()), OriginResponse{});
            if (dj.contains("urls")) {
                for (const auto& uj : dj["urls"]) {
                    if (uj.is_string()) {
                        d.urls.push_back(uj.get<std::string>());
                    } else {
                        auto u = uj.at("url").get<std::string>();
                        d.urls.push_back(u);
                        url_overrides[u] = origin_from(uj, d.origin);
                    }
                }
            } else {
                d.urls.push_back("https://" + d.name + "/");
            }
            s.domains.push_back(std::move(d));
        }

        std::set<std::string> ids;
        for (const auto& vj : j.at("vantages")) {
            SimVantage v;
            v.id = vj.at("id").get<std::string>();
            if (!ids.insert(v.id).second) {
                bad("vantage listed twice: " + v.id);
            }
            v.base_latency_ms = get_or<long long>(vj, "base_latency_ms", v.base_latency_ms);
            v.flakiness = get_or(vj, "flakiness", 0.0);
            if (!(v.flakiness >= 0 && v.flakiness < 1)) {
                bad("flakiness of " + v.id + " must lie in [0, 1)");
            }
            v.seed = get_or<std::uint64_t>(vj, "seed", 0);
            if (vj.contains("policies")) {
                for (const auto& pj : vj["policies"]) {
                    v.policies.push_back(policy_from(pj));
                }
            }
            s.vantages.push_back(std::move(v));
        }
        for (const auto& b : j.value("baseline_vantages", Json::array())) {
            auto id = b.get<std::string>();
            if (!ids.contains(id)) {
                bad("baseline vantage '" + id + "' is not a vantage");
            }
            s.baseline_vantages.push_back(id);
        }

        s.index();
        for (const auto& [u, o] : url_overrides) {
            const_cast<SimUrl*>(s.find_url(u))->origin = o;
        }
    } catch (const Json::exception& e) {
        bad(e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const Json::parse_error& e) {
        throw ConfigError("cannot parse scenario " + path.string() + ": " + e.what());
    }
    return scenario_from_json(j);
}

Json to_json(const Scenario& s) {
    auto origin_json = [](const OriginResponse& o) {
        return o.dead ? Json{{"dead", true}} : Json{{"status", o.status}, {"delay_ms", o.delay_ms}};
    };
    Json j;
    j["seed"] = s.seed;
    j["tool_user_agent"] = s.tool_user_agent;
    j["n_runs"] = s.n_runs;
    j["run_interval_hours"] = s.run_interval.count();
    j["start"] = format_utc(s.start);
    j["domains"] = Json::array();
    for (const auto& d : s.domains) {
        Json dj{{"name", d.name}, {"ip", d.ip}, {"origin", origin_json(d.origin)}, {"urls", Json::array()}};
        for (const auto& u : d.urls) {
            const auto* su = s.find_url(u);
            if (su && (su->origin.dead != d.origin.dead || su->origin.status != d.origin.status ||
                       su->origin.delay_ms != d.origin.delay_ms)) {
                auto uj = origin_json(su->origin);
                uj["url"] = u;
                dj["urls"].push_back(std::move(uj));
            } else {
                dj["urls"].push_back(u);
            }
        }
        j["domains"].push_back(std::move(dj));
    }
    j["vantages"] = Json::array();
    for (const auto& v : s.vantages) {
        Json vj{{"id", v.id}, {"base_latency_ms", v.base_latency_ms}, {"flakiness", v.flakiness}, {"seed", v.seed}};
        vj["policies"] = Json::array();
        for (const auto& p : v.policies) {
            Json pj{{"match", Json{{std::string(to_string(p.matcher)), p.value}}},
                    {"mechanism", std::string(to_string(p.mechanism))}};
            if (p.mechanism == Mechanism::throttle) {
                pj["delay_ms"] = p.param;
            } else if (p.mechanism == Mechanism::http_block_page) {
                pj["status"] = p.param;
            }
            if (p.probability) {
                pj["probability"] = *p.probability;
            }
            vj["policies"].push_back(std::move(pj));
        }
        j["vantages"].push_back(std::move(vj));
    }
    j["baseline_vantages"] = s.baseline_vantages;
    return j;
}

std::vector<std::string> blocked_domains(const Scenario& s) {
    std::set<std::string> baseline(s.baseline_vantages.begin(), s.baseline_vantages.end());
    std::set<std::string> out;
    for (const auto& d : s.domains) {
        if (d.origin.dead) {
            continue;
        }
        for (const auto& v : s.vantages) {
            if (baseline.contains(v.id)) {
                continue;
            }
            for (const auto& u : d.urls) {
                const auto* su = s.find_url(u);
                auto hit = std::find_if(v.policies.begin(), v.policies.end(),
                                        [&](const BlockPolicy& p) { return p.matches(*su); });
                if (hit == v.policies.end() || !hit->always()) {
                    continue;
                }
                switch (hit->mechanism) {
                    case Mechanism::dns_nxdomain:
                    case Mechanism::dns_forged_ip:
                    case Mechanism::tcp_rst:
                    case Mechanism::http_block_page:
                        out.insert(d.name);
                        break;
                    default:
                        break;
                }
            }
        }
    }
    return {out.begin(), out.end()};
}

}  // namespace probegen::simnet
