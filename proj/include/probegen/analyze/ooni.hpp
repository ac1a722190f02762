#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "probegen/common/jsonl.hpp"
#include "probegen/common/time.hpp"
#include "probegen/probe/outcome.hpp"

namespace probegen::analyze {

enum class OoniVerdict { ok, anomaly, error };
enum class AnomalyKind { dns, tcp_ip, http_failure, http_diff };

std::string_view to_string(OoniVerdict v);
std::string_view to_string(AnomalyKind k);

struct OoniRecord {
    std::string url;
    std::string vantage_id;
    OoniVerdict verdict = OoniVerdict::ok;
    std::optional<AnomalyKind> kind;  // set iff verdict == anomaly
    std::optional<Timestamp> measured_at;
};

// Maps the public measurement format's "blocking" value: "dns", "tcp_ip",
// "http-failure", "http-diff" -> anomaly; false -> ok; null -> error.
// Throws std::invalid_argument for anything else.
OoniRecord ooni_from_blocking(std::string url, std::string vantage, const Json& blocking);

// {url, vantage, blocking, ts?}
Json to_json(const OoniRecord& r);

// Reads an import file and keeps one record per (url, vantage): the latest by
// timestamp, or the later line when timestamps tie or are missing.
std::vector<OoniRecord> load_ooni(const std::filesystem::path& path);
std::vector<OoniRecord> latest_wins(std::vector<OoniRecord> records);

// curl and OONI concur: Accessible with ok, or Inaccessible/Error with an anomaly.
bool ooni_agreement(probe::ResponseClass curl_class, const OoniRecord& ooni);

}  // namespace probegen::analyze
