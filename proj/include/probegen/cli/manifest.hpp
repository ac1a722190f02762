#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probegen/common/jsonl.hpp"

namespace probegen::cli {

namespace fs = std::filesystem;

// Written last into a stage directory; its presence marks the stage complete.
struct StageManifest {
    std::string stage;
    std::map<std::string, std::string> inputs;   // path -> sha256
    std::map<std::string, std::string> outputs;  // path relative to the stage dir -> sha256
    std::string config_hash;
    std::uint64_t seed = 0;
    long long duration_ms = 0;
    std::string completed_at;

    Json to_json() const;
    static StageManifest from_json(const Json& j);
};

inline constexpr const char* kManifestName = "manifest.json";

// Hashes of the given files (directories hash every regular file inside, in
// path order). Missing files throw Error.
std::map<std::string, std::string> hash_inputs(const std::vector<fs::path>& paths);

// Every regular file under `dir` except the manifest.
std::map<std::string, std::string> hash_outputs(const fs::path& dir);

std::optional<StageManifest> read_manifest(const fs::path& stage_dir);
void write_manifest(const fs::path& stage_dir, const StageManifest& m);

// True when the recorded manifest has the same inputs, config hash and seed,
// and its outputs are still on disk unchanged.
bool up_to_date(const StageManifest& recorded, const std::map<std::string, std::string>& inputs,
                const std::string& config_hash, std::uint64_t seed, const fs::path& stage_dir);

}  // namespace probegen::cli
