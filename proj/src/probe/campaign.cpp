#include "probegen/probe/campaign.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "probegen/common/log.hpp"
#include "probegen/common/parallel.hpp"
#include "probegen/common/rate_limiter.hpp"
#include "probegen/common/rng.hpp"

namespace probegen::probe {

std::vector<std::string> run_order(const std::vector<std::string>& urls, std::uint64_t seed,
                                   const std::string& vantage_id, int run_id) {
    std::vector<std::string> order = urls;
    Rng rng(derive_seed(seed, vantage_id, static_cast<std::uint64_t>(run_id)));
    rng.shuffle(std::span(order));
    return order;
}

CampaignStatus run_campaign(const std::vector<std::string>& urls, const std::string& vantage_id,
                            Transport& transport, const std::filesystem::path& log_path,
                            const CampaignOptions& options) {
    if (options.n_runs < 1) {
        throw std::invalid_argument("n_runs must be at least 1");
    }
    std::set<std::pair<std::string, int>> done;
    if (std::filesystem::exists(log_path)) {
        for (const auto& o : read_outcomes(log_path)) {
            if (o.vantage_id == vantage_id) {
                done.insert({o.url, o.run_id});
            }
        }
    }
    CampaignStatus status;
    status.already_logged = done.size();
    auto sleep = options.sleep ? options.sleep : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
    RateLimiter limiter(options.requests_per_second, std::max(1.0, options.requests_per_second));
    JsonlAppender out(log_path);
    std::size_t budget = options.max_fetches.value_or(SIZE_MAX);
    std::optional<std::chrono::steady_clock::time_point> last_run_start;

    for (int run = 0; run < options.n_runs; ++run) {
        std::vector<std::pair<std::size_t, std::string>> todo;
        auto order = run_order(urls, options.seed, vantage_id, run);
        for (std::size_t pos = 0; pos < order.size(); ++pos) {
            if (!done.contains({order[pos], run})) {
                todo.push_back({pos, order[pos]});
            }
        }
        if (todo.empty()) {
            continue;
        }
        if (budget == 0) {
            return status;
        }
        if (todo.size() > budget) {
            todo.resize(budget);
        }
        if (!transport.reachable()) {
            log().error("vantage {} unreachable before run {}; campaign paused", vantage_id, run);
            status.paused = true;
            return status;
        }
        if (!options.virtual_clock && last_run_start && options.run_interval.count() > 0) {
            auto due = *last_run_start + options.run_interval;
            auto now = std::chrono::steady_clock::now();
            if (due > now) {
                sleep(std::chrono::duration_cast<std::chrono::milliseconds>(due - now));
            }
        }
        last_run_start = std::chrono::steady_clock::now();

        std::vector<std::optional<FetchOutcome>> slots(todo.size());
        std::size_t next_write = 0;
        std::mutex write_mutex;
        parallel_for(todo.size(), options.parallelism, [&](std::size_t i) {
            const auto& [pos, url] = todo[i];
            if (!options.virtual_clock && options.requests_per_second > 0) {
                limiter.acquire();
            }
            auto r = transport.get(url, run, options.timeout_s);
            FetchOutcome o{url, vantage_id, run, r.kind, r.code, r.elapsed_ms, {}};
            o.timestamp = options.virtual_clock
                              ? options.virtual_start + options.run_interval * run + std::chrono::milliseconds(pos)
                              : now_utc();
            std::lock_guard lock(write_mutex);
            slots[i] = std::move(o);
            while (next_write < slots.size() && slots[next_write]) {
                out.append(to_json(*slots[next_write]));
                slots[next_write].reset();
                ++next_write;
            }
        });
        for (const auto& [pos, url] : todo) {
            done.insert({url, run});
        }
        status.fetched += todo.size();
        budget -= todo.size();
    }
    status.complete = done.size() >= urls.size() * static_cast<std::size_t>(options.n_runs);
    if (status.complete) {
        log().info("vantage {}: campaign complete ({} fetches this session)", vantage_id, status.fetched);
    }
    return status;
}

}  // namespace probegen::probe
