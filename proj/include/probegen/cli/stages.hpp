#pragma once

#include <string>
#include <vector>

#include "probegen/cli/config.hpp"

namespace probegen::cli {

struct StageOptions {
    bool force = false;       // recompute even when the manifest matches
    bool allow_real = false;  // permit real network and provider modes
};

enum class StageState { done, up_to_date, paused };

struct StageRun {
    StageState state = StageState::done;
    std::string note;
};

// Pipeline order: sanitize nlp topics expand gen-queries crawl probe
// aggregate analyze report, plus simulate (scenario-driven outcomes).
const std::vector<std::string>& stage_names();

// Stages that `all` runs for this config.
std::vector<std::string> pipeline_for(const RunConfig& config);

// Runs one stage in <run_dir>/<stage>. Throws Error("missing stage: X") when
// a prerequisite has no manifest and ConfigError for configuration problems.
// Credential values read along the way are appended to `secrets` so callers
// can scrub messages.
StageRun run_stage(const std::string& name, const RunConfig& config, const StageOptions& options,
                   std::vector<std::string>& secrets);

}  // namespace probegen::cli
