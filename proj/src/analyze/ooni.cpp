#include "probegen/analyze/ooni.hpp"

#include <map>
#include <stdexcept>

#include "probegen/common/error.hpp"

namespace probegen::analyze {

std::string_view to_string(OoniVerdict v) {
    switch (v) {
        case OoniVerdict::ok: return "ok";
        case OoniVerdict::anomaly: return "anomaly";
        case OoniVerdict::error: return "error";
    }
    return "error";
}

std::string_view to_string(AnomalyKind k) {
    switch (k) {
        case AnomalyKind::dns: return "dns";
        case AnomalyKind::tcp_ip: return "tcp_ip";
        case AnomalyKind::http_failure: return "http-failure";
        case AnomalyKind::http_diff: return "http-diff";
    }
    return "dns";
}

OoniRecord ooni_from_blocking(std::string url, std::string vantage, const Json& blocking) {
    OoniRecord r{std::move(url), std::move(vantage), OoniVerdict::ok, std::nullopt, std::nullopt};
    if (blocking.is_null()) {
        r.verdict = OoniVerdict::error;
        return r;
    }
    if (blocking.is_boolean()) {
        if (blocking.get<bool>()) {
            throw std::invalid_argument("blocking=true carries no anomaly kind");
        }
        return r;
    }
    if (!blocking.is_string()) {
        throw std::invalid_argument("blocking must be a string, false or null");
    }
    auto s = blocking.get<std::string>();
    r.verdict = OoniVerdict::anomaly;
    if (s == "dns") {
        r.kind = AnomalyKind::dns;
    } else if (s == "tcp_ip") {
        r.kind = AnomalyKind::tcp_ip;
    } else if (s == "http-failure") {
        r.kind = AnomalyKind::http_failure;
    } else if (s == "http-diff") {
        r.kind = AnomalyKind::http_diff;
    } else {
        throw std::invalid_argument("unknown blocking value '" + s + "'");
    }
    return r;
}

Json to_json(const OoniRecord& r) {
    Json j;
    j["url"] = r.url;
    j["vantage"] = r.vantage_id;
    switch (r.verdict) {
        case OoniVerdict::ok: j["blocking"] = false; break;
        case OoniVerdict::error: j["blocking"] = nullptr; break;
        case OoniVerdict::anomaly: j["blocking"] = std::string(to_string(*r.kind)); break;
    }
    if (r.measured_at) {
        j["ts"] = format_utc(*r.measured_at);
    }
    return j;
}

std::vector<OoniRecord> latest_wins(std::vector<OoniRecord> records) {
    std::map<std::pair<std::string, std::string>, std::size_t> best;
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto key = std::pair{records[i].vantage_id, records[i].url};
        auto it = best.find(key);
        if (it == best.end()) {
            best.emplace(key, i);
            continue;
        }
        const auto& cur = records[it->second];
        const auto& cand = records[i];
        bool newer = !cur.measured_at || !cand.measured_at || *cand.measured_at >= *cur.measured_at;
        if (newer) {
            it->second = i;
        }
    }
    std::vector<OoniRecord> out;
    out.reserve(best.size());
    for (const auto& [key, i] : best) {
        out.push_back(std::move(records[i]));
    }
    return out;
}

std::vector<OoniRecord> load_ooni(const std::filesystem::path& path) {
    std::vector<OoniRecord> records;
    const std::string file = path.string();
    for_each_jsonl(path, [&](const Json& rec, std::size_t line) {
        FieldReader r{rec, file, line};
        if (!rec.contains("blocking")) {
            r.fail("missing field 'blocking'");
        }
        try {
            auto o = ooni_from_blocking(r.string("url"), r.string("vantage"), rec["blocking"]);
            if (rec.contains("ts")) {
                o.measured_at = parse_utc(r.string("ts"));
            }
            records.push_back(std::move(o));
        } catch (const std::invalid_argument& e) {
            r.fail(e.what());
        } catch (const ConfigError& e) {
            r.fail(e.what());
        }
    });
    return latest_wins(std::move(records));
}

bool ooni_agreement(probe::ResponseClass curl_class, const OoniRecord& ooni) {
    if (curl_class == probe::ResponseClass::Accessible) {
        return ooni.verdict == OoniVerdict::ok;
    }
    return ooni.verdict == OoniVerdict::anomaly;
}

}  // namespace probegen::analyze
