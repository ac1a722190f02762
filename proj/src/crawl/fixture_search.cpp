#include "probegen/crawl/fixture_search.hpp"

#include <algorithm>

#include "probegen/common/error.hpp"
#include "probegen/common/hash.hpp"
#include "probegen/common/text.hpp"
#include "probegen/topics/porter.hpp"

namespace probegen::crawl {

ReplaySearchClient::ReplaySearchClient(const std::filesystem::path& jsonl, SearchClient* fallback)
    : fallback_(fallback) {
    const std::string file = jsonl.string();
    for_each_jsonl(jsonl, [&](const Json& rec, std::size_t line) {
        FieldReader r{rec, file, line};
        std::string key = rec.contains("request_sha256") ? r.string("request_sha256") : sha256_hex(r.string("query"));
        Entry e;
        if (rec.contains("error")) {
            if (r.string("error") != "quota") {
                r.fail("'error' must be \"quota\"");
            }
            e.quota = true;
        }
        if (rec.contains("urls")) {
            for (const auto& u : rec["urls"]) {
                if (!u.is_string()) {
                    r.fail("'urls' items must be strings");
                }
                e.response.urls.push_back(u.get<std::string>());
            }
        }
        if (rec.contains("corrected_query")) {
            e.response.corrected_query = r.string("corrected_query");
        }
        table_[key] = std::move(e);
    });
}

void ReplaySearchClient::add(const std::string& query_text, SearchResponse response) {
    std::lock_guard lock(mutex_);
    table_[sha256_hex(query_text)] = Entry{std::move(response), false};
}

void ReplaySearchClient::add_quota_error(const std::string& query_text) {
    std::lock_guard lock(mutex_);
    table_[sha256_hex(query_text)] = Entry{{}, true};
}

SearchResponse ReplaySearchClient::search(const SearchRequest& request) {
    auto text = request.text();
    {
        std::lock_guard lock(mutex_);
        log_.push_back(text);
        auto it = table_.find(sha256_hex(text));
        if (it != table_.end()) {
            if (it->second.quota) {
                throw QuotaExhausted("search quota exhausted");
            }
            auto resp = it->second.response;
            if (static_cast<int>(resp.urls.size()) > request.max_results) {
                resp.urls.resize(request.max_results);
            }
            return resp;
        }
    }
    if (fallback_) {
        return fallback_->search(request);
    }
    return {};
}

std::size_t ReplaySearchClient::calls() const {
    std::lock_guard lock(mutex_);
    return log_.size();
}

std::vector<std::string> ReplaySearchClient::requests() const {
    std::lock_guard lock(mutex_);
    return log_;
}

namespace {

std::vector<std::string> words_of(std::string_view s) {
    std::vector<std::string> out;
    std::string cur;
    for (char32_t c : text::to_u32(text::fold_case(s))) {
        if (text::is_letter(c) || text::is_digit(c) || text::is_mark(c)) {
            text::append_utf8(cur, c);
        } else if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
    }
    if (!cur.empty()) {
        out.push_back(std::move(cur));
    }
    return out;
}

bool one_edit_apart(const std::u32string& a, const std::u32string& b) {
    if (a == b) {
        return false;
    }
    std::size_t la = a.size(), lb = b.size();
    if (la > lb + 1 || lb > la + 1) {
        return false;
    }
    std::size_t i = 0;
    while (i < la && i < lb && a[i] == b[i]) {
        ++i;
    }
    if (la == lb) {
        // substitution or adjacent transposition
        if (a.compare(i + 1, std::u32string::npos, b, i + 1, std::u32string::npos) == 0) {
            return true;
        }
        return i + 1 < la && a[i] == b[i + 1] && a[i + 1] == b[i] &&
               a.compare(i + 2, std::u32string::npos, b, i + 2, std::u32string::npos) == 0;
    }
    const auto& longer = la > lb ? a : b;
    const auto& shorter = la > lb ? b : a;
    return longer.compare(i + 1, std::u32string::npos, shorter, i, std::u32string::npos) == 0;
}

}  // namespace

LocalIndexSearchClient::LocalIndexSearchClient(const std::filesystem::path& jsonl) {
    const std::string file = jsonl.string();
    for_each_jsonl(jsonl, [&](const Json& rec, std::size_t line) {
        FieldReader r{rec, file, line};
        add_page(r.string("url"), r.string("text"));
    });
}

void LocalIndexSearchClient::add_page(const std::string& url, const std::string& text) {
    std::map<std::string, int> counts;
    for (auto& w : words_of(text)) {
        vocab_.insert(w);
        // Queries built from stemmed topic keywords match inflected page words.
        auto stem = topics::porter_stem(w);
        if (stem != w) {
            ++counts[stem];
        }
        ++counts[std::move(w)];
    }
    urls_.push_back(url);
    docs_.push_back(std::move(counts));
}

SearchResponse LocalIndexSearchClient::search(const SearchRequest& request) {
    auto query = words_of(request.text());
    SearchResponse resp;
    if (query.empty()) {
        return resp;
    }
    std::vector<std::pair<int, std::size_t>> hits;
    for (std::size_t d = 0; d < docs_.size(); ++d) {
        int score = 0;
        bool all = true;
        for (const auto& w : query) {
            auto it = docs_[d].find(w);
            if (it == docs_[d].end()) {
                all = false;
                break;
            }
            score += it->second;
        }
        if (all) {
            hits.push_back({score, d});
        }
    }
    std::sort(hits.begin(), hits.end(), [&](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : urls_[a.second] < urls_[b.second];
    });
    for (const auto& [score, d] : hits) {
        if (static_cast<int>(resp.urls.size()) == request.max_results) {
            break;
        }
        resp.urls.push_back(urls_[d]);
    }
    if (resp.urls.empty()) {
        bool changed = false;
        std::string corrected;
        for (const auto& w : query) {
            std::string pick = w;
            if (!vocab_.contains(w)) {
                auto wu = text::to_u32(w);
                for (const auto& v : vocab_) {
                    if (one_edit_apart(wu, text::to_u32(v))) {
                        pick = v;
                        changed = true;
                        break;
                    }
                }
            }
            if (!corrected.empty()) {
                corrected.push_back(' ');
            }
            corrected += pick;
        }
        if (changed) {
            resp.corrected_query = corrected;
        }
    }
    return resp;
}

}  // namespace probegen::crawl
