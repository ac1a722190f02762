#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "probegen/cli/app.hpp"
#include "probegen/cli/config.hpp"
#include "probegen/cli/manifest.hpp"
#include "probegen/cli/stages.hpp"
#include "probegen/common/error.hpp"
#include "test_support.hpp"

using namespace probegen;
using namespace probegen::cli;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& p, const std::string& s) {
    std::ofstream out(p, std::ios::binary);
    out << s;
}

Json fixture_config() { return Json::parse(slurp(test::fixture("pipeline.json"))); }

RunConfig pipeline_config(const fs::path& run_dir) {
    auto c = load_config(test::fixture("pipeline.json"));
    c.run_dir = run_dir;
    return c;
}

void run_all(const RunConfig& c, const StageOptions& o = {}) {
    std::vector<std::string> secrets;
    for (const auto& s : pipeline_for(c)) {
        run_stage(s, c, o, secrets);
    }
}

int run_binary(const std::string& args) {
    std::string cmd = std::string(PROBEGEN_BINARY) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST(Config, LoadsFixtureAndResolvesPaths) {
    auto c = load_config(test::fixture("pipeline.json"));
    EXPECT_EQ(c.master_seed, 7u);
    EXPECT_EQ(c.topics.K, 4);
    EXPECT_EQ(c.per_topic_budget, 6);
    ASSERT_EQ(c.source_lists.size(), 2u);
    EXPECT_TRUE(c.source_lists[0].is_absolute());
    EXPECT_TRUE(fs::exists(c.source_lists[0]));
    EXPECT_EQ(c.vantage_ids().size(), 7u);
    EXPECT_EQ(c.baseline_vantages.size(), 5u);
    EXPECT_EQ(c.client("llm").mode, "fixture");
    EXPECT_EQ(pipeline_for(c).front(), "sanitize");
    EXPECT_EQ(pipeline_for(c).back(), "report");
}

TEST(Config, Defaults) {
    auto c = config_from_json(Json::object(), "/tmp");
    EXPECT_DOUBLE_EQ(c.thresholds.consistency, 0.95);
    EXPECT_EQ(c.thresholds.min_chars, 300u);
    EXPECT_EQ(c.thresholds.timeout_s, 30);
    EXPECT_EQ(c.thresholds.min_span_days, 120);
    EXPECT_EQ(c.probe.n_runs, 50);
    EXPECT_EQ(c.outcome_stage, "probe");
}

TEST(Config, RejectsBadValues) {
    auto with = [](const char* patch) {
        auto j = fixture_config();
        j.merge_patch(Json::parse(patch));
        return j;
    };
    EXPECT_THROW(config_from_json(with(R"({"clients":{"llm":{"mode":"live"}}})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"clients":{"oracle":{"mode":"fixture"}}})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"baseline_vantages":["mars-1"]})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"thresholds":{"consistency":0.4}})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"probe":{"transport":"carrier-pigeon"}})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"aggregate":{"outcomes_from":"elsewhere"}})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"topics":{"K":1}})"), "/tmp"), ConfigError);
    EXPECT_THROW(config_from_json(with(R"({"master_seed":"seven"})"), "/tmp"), ConfigError);
    EXPECT_THROW(load_config("/nonexistent/probegen.json"), ConfigError);
}

TEST(Manifest, HashesAndUpToDate) {
    test::TempDir tmp;
    spit(tmp / "a.txt", "alpha");
    fs::create_directories(tmp / "d");
    spit(tmp / "d" / "x", "1");
    spit(tmp / "d" / "y", "2");
    auto h = hash_inputs({tmp / "a.txt", tmp / "d"});
    EXPECT_EQ(h.size(), 3u);
    EXPECT_EQ(h.at((tmp / "a.txt").string()),
              "8ed3f6ad685b959ead7022518e1af76cd816f8e8ec7ccdda1ed4018e8f2223f8");  // sha256("alpha")
    EXPECT_THROW(hash_inputs({tmp / "missing"}), Error);

    auto stage = tmp / "stage";
    fs::create_directories(stage);
    spit(stage / "out.jsonl", "{}\n");
    StageManifest m;
    m.stage = "demo";
    m.inputs = h;
    m.outputs = hash_outputs(stage);
    m.config_hash = "c1";
    m.seed = 9;
    write_manifest(stage, m);
    auto back = read_manifest(stage);
    ASSERT_TRUE(back);
    EXPECT_EQ(back->outputs.size(), 1u);  // the manifest itself is not an output
    EXPECT_TRUE(up_to_date(*back, h, "c1", 9, stage));
    EXPECT_FALSE(up_to_date(*back, h, "c2", 9, stage));
    EXPECT_FALSE(up_to_date(*back, h, "c1", 10, stage));
    spit(tmp / "a.txt", "beta");
    EXPECT_FALSE(up_to_date(*back, hash_inputs({tmp / "a.txt", tmp / "d"}), "c1", 9, stage));
    spit(stage / "out.jsonl", "tampered\n");
    EXPECT_FALSE(up_to_date(*back, h, "c1", 9, stage));
    EXPECT_FALSE(read_manifest(tmp / "nowhere"));
}

TEST(Stages, MissingPrerequisite) {
    test::TempDir tmp;
    auto c = pipeline_config(tmp.path());
    std::vector<std::string> secrets;
    try {
        run_stage("probe", c, {}, secrets);
        FAIL() << "expected Error";
    } catch (const ConfigError&) {
        FAIL() << "expected a stage error, not a config error";
    } catch (const Error& e) {
        EXPECT_STREQ(e.what(), "missing stage: crawl");
    }
    EXPECT_THROW(run_stage("no-such-stage", c, {}, secrets), ConfigError);
}

TEST(Stages, RealModeNeedsPermission) {
    test::TempDir tmp;
    auto j = fixture_config();
    j["clients"]["translation"] = Json{{"mode", "real"}, {"key_env", "PROBEGEN_TEST_UNSET_KEY"}};
    auto c = config_from_json(j, test::fixture(""));
    c.run_dir = tmp.path();
    std::vector<std::string> secrets;
    run_stage("sanitize", c, {}, secrets);
    try {
        run_stage("nlp", c, {}, secrets);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("--allow-real"), std::string::npos);
    }
    // With permission, the missing credential is reported by variable name.
    StageOptions allow;
    allow.allow_real = true;
    ::unsetenv("PROBEGEN_TEST_UNSET_KEY");
    try {
        run_stage("nlp", c, allow, secrets);
        FAIL() << "expected ConfigError";
    } catch (const ConfigError& e) {
        EXPECT_NE(std::string(e.what()).find("PROBEGEN_TEST_UNSET_KEY"), std::string::npos);
    }
}

TEST(Stages, FixturePipelineIsReproducible) {
    test::TempDir a, b;
    auto ca = pipeline_config(a.path());
    auto cb = pipeline_config(b.path());
    cb.parallelism = 1;  // output must not depend on parallelism
    run_all(ca);
    run_all(cb);
    for (const char* f : {"crawl/probe_list.jsonl", "crawl/probe_list.txt", "topics/keywords.jsonl",
                          "gen-queries/queries.jsonl", "analyze/suspected.jsonl"}) {
        auto x = slurp(a / f);
        EXPECT_FALSE(x.empty()) << f;
        EXPECT_EQ(x, slurp(b / f)) << f;
    }

    // A rerun is a no-op; --force recomputes.
    std::vector<std::string> secrets;
    EXPECT_EQ(run_stage("topics", ca, {}, secrets).state, StageState::up_to_date);
    auto before = read_manifest(a / "topics")->completed_at;
    StageOptions force;
    force.force = true;
    EXPECT_EQ(run_stage("topics", ca, force, secrets).state, StageState::done);
    EXPECT_EQ(slurp(a / "topics/keywords.jsonl"), slurp(b / "topics/keywords.jsonl"));
    EXPECT_FALSE(before.empty());

    // Changing the config invalidates downstream manifests.
    ca.raw["queries"]["per_topic_budget"] = 5;
    EXPECT_EQ(run_stage("topics", ca, {}, secrets).state, StageState::done);

    auto report = slurp(a / "report/report.txt");
    EXPECT_NE(report.find("cn-bj"), std::string::npos);
    EXPECT_NE(report.find("Exit codes"), std::string::npos);
    auto suspected = slurp(a / "analyze/suspected.jsonl");
    EXPECT_NE(suspected.find("casinoreviews.com"), std::string::npos);
}

TEST(App, ExitCodes) {
    test::TempDir tmp;
    spit(tmp / "bad.json", R"({"clients":{"llm":{"mode":"nonsense"}}})");
    EXPECT_EQ(run_binary("--config " + (tmp / "bad.json").string() + " sanitize"), kExitConfig);
    EXPECT_EQ(run_binary("--no-such-flag"), kExitConfig);
    EXPECT_EQ(run_binary("--config " + test::fixture("pipeline.json").string() + " --run-dir " +
                         (tmp / "run").string() + " probe"),
              kExitStage);
    EXPECT_EQ(run_binary("--config " + test::fixture("simnet/config.json").string() + " --run-dir " +
                         (tmp / "sim").string() + " all"),
              kExitOk);
    EXPECT_TRUE(fs::exists(tmp / "sim" / "report" / "report.txt"));
    EXPECT_EQ(run_binary("--help"), kExitOk);
}

TEST(App, CheckExchange) {
    test::TempDir tmp;
    std::string out_file = (tmp / "out.json").string();
    std::string cmd = std::string(PROBEGEN_BINARY) + " check-exchange " +
                      test::test_data("exchange/top2vec_3x30.jsonl").string() + " > " + out_file + " 2>/dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    auto j = Json::parse(slurp(out_file));
    EXPECT_EQ(j["topics"]["top2vec"], 3);
    EXPECT_EQ(j["assignments"], 9);
    EXPECT_EQ(j["outliers_dropped"], 1);

    spit(tmp / "broken.jsonl", "{\"method\":\"lda\",\"topic_id\":0}\n");
    EXPECT_EQ(run_binary("check-exchange " + (tmp / "broken.jsonl").string()), kExitStage);
}
