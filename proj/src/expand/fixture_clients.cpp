#include "probegen/expand/clients.hpp"

#include <algorithm>

#include "probegen/common/error.hpp"
#include "probegen/common/hash.hpp"
#include "probegen/common/jsonl.hpp"

namespace probegen::expand {

std::string llm_request_key(std::string_view prompt) { return sha256_hex(prompt); }

std::string trends_request_key(std::string_view keyword, std::string_view window) {
    std::string req(keyword);
    req.push_back('\n');
    req += window;
    return sha256_hex(req);
}

ReplayLlmClient::ReplayLlmClient(const std::filesystem::path& jsonl) {
    const std::string file = jsonl.string();
    for_each_jsonl(jsonl, [&](const Json& rec, std::size_t line) {
        FieldReader r{rec, file, line};
        std::vector<std::string> needles;
        std::string key;
        if (rec.contains("prompt_contains")) {
            for (const auto& n : r.require("prompt_contains")) {
                if (!n.is_string()) {
                    r.fail("'prompt_contains' items must be strings");
                }
                needles.push_back(n.get<std::string>());
            }
            if (needles.empty()) {
                r.fail("'prompt_contains' must not be empty");
            }
        } else {
            key = rec.contains("request_sha256") ? r.string("request_sha256") : llm_request_key(r.string("prompt"));
        }
        const auto& resp = r.require("response");
        Entry e;
        if (resp.is_string()) {
            e.replies.push_back(resp.get<std::string>());
        } else if (resp.is_array() && !resp.empty()) {
            for (const auto& item : resp) {
                if (!item.is_string()) {
                    r.fail("'response' items must be strings");
                }
                e.replies.push_back(item.get<std::string>());
            }
        } else {
            r.fail("'response' must be a string or a non-empty list of strings");
        }
        if (needles.empty()) {
            table_[key] = std::move(e);
        } else {
            rules_.emplace_back(std::move(needles), std::move(e));
        }
    });
}

void ReplayLlmClient::add(std::string_view prompt, std::vector<std::string> replies) {
    std::lock_guard lock(mutex_);
    table_[llm_request_key(prompt)] = Entry{std::move(replies), 0};
}

std::string ReplayLlmClient::complete(const std::string& prompt) {
    std::lock_guard lock(mutex_);
    ++calls_;
    Entry* entry = nullptr;
    if (auto it = table_.find(llm_request_key(prompt)); it != table_.end()) {
        entry = &it->second;
    } else {
        for (auto& [needles, e] : rules_) {
            if (std::all_of(needles.begin(), needles.end(),
                            [&](const std::string& n) { return prompt.find(n) != std::string::npos; })) {
                entry = &e;
                break;
            }
        }
    }
    if (!entry || entry->replies.empty()) {
        throw ClientError("no recorded reply for prompt " + llm_request_key(prompt).substr(0, 12));
    }
    auto& e = *entry;
    std::size_t i = std::min(e.served, e.replies.size() - 1);
    ++e.served;
    return e.replies[i];
}

namespace {

std::vector<std::string> string_list(const FieldReader& r, const char* key) {
    std::vector<std::string> out;
    if (!r.record.contains(key)) {
        return out;
    }
    const auto& list = r.record[key];
    if (!list.is_array()) {
        r.fail(std::string("'") + key + "' must be a list");
    }
    for (const auto& item : list) {
        if (!item.is_string()) {
            r.fail(std::string("'") + key + "' items must be strings");
        }
        out.push_back(item.get<std::string>());
    }
    return out;
}

}  // namespace

ReplayTrendsClient::ReplayTrendsClient(const std::filesystem::path& jsonl) {
    const std::string file = jsonl.string();
    for_each_jsonl(jsonl, [&](const Json& rec, std::size_t line) {
        FieldReader r{rec, file, line};
        auto window = rec.contains("window") ? r.string("window") : std::string(kDefaultTrendsWindow);
        Entry e;
        if (rec.contains("error")) {
            e.error = r.string("error");
            if (e.error != "quota" && e.error != "failure") {
                r.fail("'error' must be \"quota\" or \"failure\"");
            }
        } else {
            e.response = {string_list(r, "top"), string_list(r, "rising")};
        }
        table_[trends_request_key(r.string("keyword"), window)] = std::move(e);
    });
}

void ReplayTrendsClient::add(std::string_view keyword, std::string_view window, TrendsResponse response) {
    table_[trends_request_key(keyword, window)] = Entry{std::move(response), {}};
}

void ReplayTrendsClient::add_failure(std::string_view keyword, std::string_view window, bool quota) {
    table_[trends_request_key(keyword, window)] = Entry{{}, quota ? "quota" : "failure"};
}

TrendsResponse ReplayTrendsClient::related(const std::string& keyword, const std::string& window) {
    auto it = table_.find(trends_request_key(keyword, window));
    if (it == table_.end()) {
        throw ClientError("no recorded trends reply for '" + keyword + "'");
    }
    if (it->second.error == "quota") {
        throw QuotaExhausted("trends quota exhausted");
    }
    if (!it->second.error.empty()) {
        throw ClientError("trends provider failure");
    }
    return it->second.response;
}

}  // namespace probegen::expand
