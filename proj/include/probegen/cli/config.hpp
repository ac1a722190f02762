#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "probegen/common/jsonl.hpp"

namespace probegen::cli {

namespace fs = std::filesystem;

struct Thresholds {
    double consistency = 0.95;
    std::size_t min_chars = 300;
    int timeout_s = 30;
    int min_span_days = 120;
};

// One external provider. Fixture mode reads recorded replies; real mode
// reads credentials from the named environment variables and is only
// honoured when the command line allows it.
struct ClientConfig {
    std::string mode = "fixture";  // fixture | real
    Json options = Json::object();

    std::string text(const char* key, const std::string& fallback = {}) const;
    double number(const char* key, double fallback) const;
};

struct VantageConfig {
    std::string id;
    std::string proxy;  // real mode: route this vantage through a proxy
};

struct TopicSettings {
    int K = 64;
    double alpha = 0.1;
    double beta = 0.01;
    int iters = 1000;
    int keywords_per_topic = 30;
    std::size_t min_distinct_stems = 4;
    std::vector<fs::path> exchange_files;  // embedding-plugin output
};

struct ProbeSettings {
    int n_runs = 50;
    std::string transport = "simnet";  // simnet | curl
    double run_interval_hours = 24;
    double requests_per_second = 0;
    std::string user_agent;
};

struct RunConfig {
    fs::path config_path;
    fs::path run_dir;
    std::uint64_t master_seed = 1;
    std::size_t parallelism = 1;
    Thresholds thresholds;

    std::vector<fs::path> source_lists;
    fs::path pages;          // recorded page store directory
    fs::path scenario;       // simnet scenario
    fs::path ooni;           // OONI import file
    fs::path content_patterns;

    TopicSettings topics;
    std::size_t llm_max_keywords = 30;
    std::size_t trends_max_keywords = 40;
    std::string trends_window = "today 5-y";
    int per_topic_budget = 10;
    int permutations = 1;
    int search_max_retries = 5;
    double search_requests_per_second = 0;
    ProbeSettings probe;
    std::string outcome_stage = "probe";  // probe | simulate

    std::map<std::string, ClientConfig> clients;  // search, llm, trends, translation
    std::vector<VantageConfig> vantages;
    std::vector<std::string> baseline_vantages;

    Json raw;  // as loaded, for the manifest config hash

    const ClientConfig& client(const std::string& name) const;
    std::vector<std::string> vantage_ids() const;
};

// Reads a JSON config. Relative paths resolve against the config file's
// directory. Throws ConfigError on unknown modes, out-of-range thresholds and
// baseline vantages missing from the vantage list.
RunConfig load_config(const fs::path& path);
RunConfig config_from_json(const Json& j, const fs::path& base_dir);

}  // namespace probegen::cli
