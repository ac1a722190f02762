#include "probegen/cli/manifest.hpp"

#include <algorithm>

#include "probegen/common/error.hpp"
#include "probegen/common/hash.hpp"

namespace probegen::cli {

Json StageManifest::to_json() const {
    Json j;
    j["stage"] = stage;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["config_hash"] = config_hash;
    j["seed"] = seed;
    j["duration_ms"] = duration_ms;
    j["completed_at"] = completed_at;
    return j;
}

StageManifest StageManifest::from_json(const Json& j) {
    StageManifest m;
    m.stage = j.at("stage").get<std::string>();
    m.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
    m.outputs = j.at("outputs").get<std::map<std::string, std::string>>();
    m.config_hash = j.at("config_hash").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.duration_ms = j.value("duration_ms", 0LL);
    m.completed_at = j.value("completed_at", "");
    return m;
}

std::map<std::string, std::string> hash_inputs(const std::vector<fs::path>& paths) {
    std::map<std::string, std::string> out;
    for (const auto& p : paths) {
        if (fs::is_directory(p)) {
            std::vector<fs::path> files;
            for (const auto& e : fs::recursive_directory_iterator(p)) {
                if (e.is_regular_file() && e.path().filename() != kManifestName) {
                    files.push_back(e.path());
                }
            }
            std::sort(files.begin(), files.end());
            for (const auto& f : files) {
                out[f.string()] = sha256_file(f);
            }
        } else if (fs::is_regular_file(p)) {
            out[p.string()] = sha256_file(p);
        } else {
            throw Error("input not found: " + p.string());
        }
    }
    return out;
}

std::map<std::string, std::string> hash_outputs(const fs::path& dir) {
    std::map<std::string, std::string> out;
    if (!fs::is_directory(dir)) {
        return out;
    }
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().filename() != kManifestName) {
            out[fs::relative(e.path(), dir).generic_string()] = sha256_file(e.path());
        }
    }
    return out;
}

std::optional<StageManifest> read_manifest(const fs::path& stage_dir) {
    auto p = stage_dir / kManifestName;
    if (!fs::exists(p)) {
        return std::nullopt;
    }
    try {
        return StageManifest::from_json(Json::parse(read_file(p)));
    } catch (const std::exception&) {
        return std::nullopt;  // unreadable: treated as incomplete
    }
}

void write_manifest(const fs::path& stage_dir, const StageManifest& m) {
    write_file_atomic(stage_dir / kManifestName, m.to_json().dump(2) + "\n");
}

bool up_to_date(const StageManifest& recorded, const std::map<std::string, std::string>& inputs,
                const std::string& config_hash, std::uint64_t seed, const fs::path& stage_dir) {
    return recorded.inputs == inputs && recorded.config_hash == config_hash && recorded.seed == seed &&
           recorded.outputs == hash_outputs(stage_dir);
}

}  // namespace probegen::cli
