#include "probegen/probe/outcome.hpp"

#include <stdexcept>

#include "probegen/common/error.hpp"

namespace probegen::probe {

std::string_view to_string(ResponseClass c) {
    switch (c) {
        case ResponseClass::Accessible: return "Accessible";
        case ResponseClass::Inaccessible: return "Inaccessible";
        case ResponseClass::Error: return "Error";
    }
    return "Error";
}

std::optional<ResponseClass> parse_response_class(std::string_view s) {
    for (auto c : {ResponseClass::Accessible, ResponseClass::Inaccessible, ResponseClass::Error}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    return std::nullopt;
}

std::string_view to_string(OutcomeKind k) {
    return k == OutcomeKind::http_status ? "http_status" : "transport_error";
}

ResponseClass classify(OutcomeKind kind, int code) {
    if (kind == OutcomeKind::transport_error) {
        return ResponseClass::Inaccessible;
    }
    return code >= 200 && code <= 399 ? ResponseClass::Accessible : ResponseClass::Error;
}

ResponseClass classify(const FetchOutcome& outcome) { return classify(outcome.kind, outcome.code); }

Json to_json(const FetchOutcome& o) {
    Json j;
    j["url"] = o.url;
    j["vantage"] = o.vantage_id;
    j["run"] = o.run_id;
    j["kind"] = std::string(to_string(o.kind));
    j["code"] = o.code;
    j["elapsed_ms"] = o.elapsed_ms;
    j["ts"] = format_utc(o.timestamp);
    return j;
}

FetchOutcome fetch_outcome_from_json(const Json& j) {
    FetchOutcome o;
    o.url = j.at("url").get<std::string>();
    o.vantage_id = j.at("vantage").get<std::string>();
    o.run_id = j.at("run").get<int>();
    auto kind = j.at("kind").get<std::string>();
    if (kind == "http_status") {
        o.kind = OutcomeKind::http_status;
    } else if (kind == "transport_error") {
        o.kind = OutcomeKind::transport_error;
    } else {
        throw std::invalid_argument("unknown outcome kind '" + kind + "'");
    }
    o.code = j.at("code").get<int>();
    if (o.kind == OutcomeKind::http_status && (o.code < 100 || o.code > 599)) {
        throw std::invalid_argument("HTTP status out of range");
    }
    if (o.kind == OutcomeKind::transport_error && o.code <= 0) {
        throw std::invalid_argument("transport error code must be positive");
    }
    o.elapsed_ms = j.at("elapsed_ms").get<long long>();
    o.timestamp = parse_utc(j.at("ts").get<std::string>());
    return o;
}

std::vector<FetchOutcome> read_outcomes(const std::filesystem::path& path) {
    std::vector<FetchOutcome> out;
    const std::string file = path.string();
    for_each_jsonl(path, [&](const Json& rec, std::size_t line) {
        try {
            out.push_back(fetch_outcome_from_json(rec));
        } catch (const std::exception& e) {
            throw SchemaError(file, line, e.what());
        }
    });
    return out;
}

}  // namespace probegen::probe
