#include "probegen/cli/app.hpp"

#include <CLI11.hpp>

#include <iostream>

#include "probegen/cli/config.hpp"
#include "probegen/cli/stages.hpp"
#include "probegen/common/error.hpp"
#include "probegen/common/log.hpp"
#include "probegen/topics/exchange.hpp"

namespace probegen::cli {

namespace {

std::string scrub(std::string msg, const std::vector<std::string>& secrets) {
    for (const auto& s : secrets) {
        if (!s.empty()) {
            msg = redact(std::move(msg), s);
        }
    }
    return msg;
}

int run_stages(const std::vector<std::string>& names, const RunConfig& config, const StageOptions& options,
               std::vector<std::string>& secrets) {
    for (const auto& name : names) {
        auto r = run_stage(name, config, options, secrets);
        switch (r.state) {
            case StageState::done:
                std::cerr << name << ": " << scrub(r.note, secrets) << "\n";
                break;
            case StageState::up_to_date:
                std::cerr << name << ": up to date\n";
                break;
            case StageState::paused:
                std::cerr << name << ": paused: " << scrub(r.note, secrets) << "\n";
                return kExitStage;
        }
    }
    return kExitOk;
}

}  // namespace

int run_app(int argc, char** argv) {
    CLI::App app{"Probe-list generation and censorship measurement pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path = "probegen.json";
    std::string run_dir;
    std::string log_level = "info";
    StageOptions options;
    app.add_option("-c,--config", config_path, "Run configuration (JSON)");
    app.add_option("--run-dir", run_dir, "Override the configured run directory");
    app.add_flag("--force", options.force, "Recompute stages even when their manifests match");
    app.add_flag("--allow-real", options.allow_real, "Permit real network and provider modes");
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error or off");

    std::vector<std::string> selected;
    for (const auto& name : stage_names()) {
        app.add_subcommand(name, "Run the " + name + " stage")->callback([&selected, name] { selected = {name}; });
    }
    bool all = false;
    app.add_subcommand("all", "Run every stage of the configured pipeline in order")->callback([&] { all = true; });

    std::string exchange_file;
    auto* check = app.add_subcommand("check-exchange", "Validate a topic-exchange file and print its contents");
    check->add_option("file", exchange_file, "Topic-exchange JSONL")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
    set_log_level(log_level);

    std::vector<std::string> secrets;
    try {
        if (check->parsed()) {
            auto ex = topics::ingest_plugin_topics(exchange_file);
            std::map<std::string, std::size_t> per_method;
            for (const auto& k : ex.keywords) {
                ++per_method[std::string(to_string(k.method))];
            }
            Json j{{"topics", per_method},
                   {"assignments", ex.assignments.size()},
                   {"outliers_dropped", ex.outliers_dropped}};
            std::cout << j.dump() << "\n";
            return kExitOk;
        }
        auto config = load_config(config_path);
        if (!run_dir.empty()) {
            config.run_dir = std::filesystem::absolute(run_dir);
        }
        return run_stages(all ? pipeline_for(config) : selected, config, options, secrets);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << scrub(e.what(), secrets) << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << scrub(e.what(), secrets) << "\n";
        return kExitStage;
    }
}

}  // namespace probegen::cli
