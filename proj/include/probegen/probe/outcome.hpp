#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/common/time.hpp"

namespace probegen::probe {

enum class OutcomeKind { http_status, transport_error };

// One fetch of one URL from one vantage in one run. `code` is the HTTP status
// for http_status and the transfer-tool exit code for transport_error.
struct FetchOutcome {
    std::string url;
    std::string vantage_id;
    int run_id = 0;
    OutcomeKind kind = OutcomeKind::http_status;
    int code = 0;
    long long elapsed_ms = 0;
    Timestamp timestamp{};
};

enum class ResponseClass { Accessible, Inaccessible, Error };

std::string_view to_string(ResponseClass c);
std::optional<ResponseClass> parse_response_class(std::string_view s);
std::string_view to_string(OutcomeKind k);

// 200-399 Accessible; any transport error Inaccessible; other statuses Error.
ResponseClass classify(const FetchOutcome& outcome);
ResponseClass classify(OutcomeKind kind, int code);

// {url, vantage, run, kind, code, elapsed_ms, ts}
Json to_json(const FetchOutcome& o);
FetchOutcome fetch_outcome_from_json(const Json& j);  // throws std::invalid_argument / Json errors

// Reads an outcome log; malformed lines raise SchemaError.
std::vector<FetchOutcome> read_outcomes(const std::filesystem::path& path);

}  // namespace probegen::probe
