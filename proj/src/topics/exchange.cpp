#include "probegen/topics/exchange.hpp"

#include <cmath>
#include <map>
#include <set>

#include "probegen/common/error.hpp"
#include "probegen/common/log.hpp"

namespace probegen::topics {

namespace {

Method read_method(const FieldReader& r) {
    auto tag = r.string("method");
    auto m = parse_method(tag);
    if (!m || *m == Method::lda) {
        r.fail("unknown method tag '" + tag + "'");
    }
    return *m;
}

int read_topic(const FieldReader& r) {
    auto id = r.integer("topic_id");
    if (id < -1 || id > 1'000'000) {
        r.fail("topic_id out of range");
    }
    return static_cast<int>(id);
}

double read_score(const FieldReader& r, const Json& j, const char* key) {
    FieldReader inner{j, r.file, r.line};
    double s = inner.number(key);
    if (!std::isfinite(s)) {
        r.fail("non-finite score");
    }
    return s;
}

}  // namespace

ExchangeData ingest_plugin_topics(const std::filesystem::path& path) {
    ExchangeData out;
    std::map<std::pair<Method, int>, TopicKeywords> keywords;
    struct Pending {
        TopicAssignment a;
        std::size_t line;
    };
    std::vector<Pending> pending;
    std::size_t records = 0;
    const std::string file = path.string();

    for_each_jsonl(path, [&](const Json& rec, std::size_t line) {
        ++records;
        FieldReader r{rec, file, line};
        bool has_keywords = rec.contains("keywords");
        bool has_url = rec.contains("url");
        if (has_keywords == has_url) {
            r.fail("record must have exactly one of 'url' or 'keywords'");
        }
        if (rec.contains("type")) {
            auto type = r.string("type");
            if (type != (has_keywords ? "keywords" : "assignment")) {
                r.fail("record type '" + type + "' does not match its fields");
            }
        }
        Method method = read_method(r);
        int topic = read_topic(r);
        if (has_url) {
            TopicAssignment a{r.string("url"), topic, method, read_score(r, rec, "score")};
            if (a.url.empty()) {
                r.fail("empty url");
            }
            if (topic == -1) {
                ++out.outliers_dropped;
                return;
            }
            pending.push_back({std::move(a), line});
            return;
        }
        const auto& list = rec["keywords"];
        if (!list.is_array()) {
            r.fail("'keywords' must be an array");
        }
        if (topic == -1) {
            ++out.outliers_dropped;
            return;
        }
        TopicKeywords tk{topic, method, {}};
        std::set<std::string> seen;
        for (const auto& item : list) {
            if (!item.is_object()) {
                r.fail("keyword entries must be objects");
            }
            FieldReader kr{item, file, line};
            auto term = kr.string("term");
            if (term.empty()) {
                r.fail("empty keyword term");
            }
            if (!seen.insert(term).second) {
                r.fail("repeated keyword '" + term + "' in topic " + std::to_string(topic));
            }
            tk.keywords.push_back({std::move(term), read_score(r, item, "score")});
        }
        rank_terms(tk.keywords);
        if (!keywords.emplace(std::pair{method, topic}, std::move(tk)).second) {
            r.fail("duplicate keywords record for " + std::string(to_string(method)) + " topic " +
                   std::to_string(topic));
        }
    });

    if (records == 0) {
        throw SchemaError(file, 0, "empty topic-exchange file");
    }
    for (auto& p : pending) {
        if (!keywords.contains({p.a.method, p.a.topic_id})) {
            throw SchemaError(file, p.line,
                              "assignment to topic " + std::to_string(p.a.topic_id) + " without keywords");
        }
        out.assignments.push_back(std::move(p.a));
    }
    for (auto& [key, tk] : keywords) {
        out.keywords.push_back(std::move(tk));
    }
    if (out.outliers_dropped > 0) {
        log().info("{}: dropped {} outlier rows", file, out.outliers_dropped);
    }
    return out;
}

void write_exchange(const std::filesystem::path& path, const std::vector<TopicKeywords>& keywords,
                    const std::vector<TopicAssignment>& assignments) {
    std::vector<Json> records;
    for (const auto& k : keywords) {
        Json j{{"type", "keywords"}};
        j.update(to_json(k));
        records.push_back(std::move(j));
    }
    for (const auto& a : assignments) {
        Json j{{"type", "assignment"}};
        j.update(to_json(a));
        records.push_back(std::move(j));
    }
    write_jsonl_atomic(path, records);
}

}  // namespace probegen::topics
