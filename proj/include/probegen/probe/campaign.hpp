#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "probegen/probe/transport.hpp"

namespace probegen::probe {

struct CampaignOptions {
    int n_runs = 1;
    std::size_t parallelism = 1;
    std::uint64_t seed = 0;  // per-run URL order derives from (seed, vantage, run)
    int timeout_s = 30;
    double requests_per_second = 0;      // 0: no rate limit
    std::chrono::seconds run_interval{0};  // minimum spacing between run starts
    // Simulated campaigns: timestamps are virtual_start + run * run_interval
    // + position ms and nothing sleeps.
    bool virtual_clock = false;
    Timestamp virtual_start{};
    std::optional<std::size_t> max_fetches;  // stop early after this many fetches
    std::function<void(std::chrono::milliseconds)> sleep;  // default: std::this_thread::sleep_for
};

struct CampaignStatus {
    std::size_t fetched = 0;         // fetches made by this call
    std::size_t already_logged = 0;  // (url, run) pairs found in the log on entry
    bool paused = false;             // vantage unreachable
    bool complete = false;           // every (url, run) pair is in the log
};

// URL order for one run: a seeded shuffle.
std::vector<std::string> run_order(const std::vector<std::string>& urls, std::uint64_t seed,
                                   const std::string& vantage_id, int run_id);

// n_runs passes over `urls` from one vantage. Each outcome is appended to
// `log_path` in run order (a reorder buffer keeps the file deterministic under
// parallel fetching). Pairs already in the log are skipped, so an interrupted
// campaign resumes without duplicates. An unreachable vantage pauses the
// campaign with an alert.
CampaignStatus run_campaign(const std::vector<std::string>& urls, const std::string& vantage_id,
                            Transport& transport, const std::filesystem::path& log_path,
                            const CampaignOptions& options = {});

}  // namespace probegen::probe
