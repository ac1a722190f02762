#pragma once

#include <cstdlib>
#include <filesystem>

namespace probegen {

// Shipped data files (profiles, stopwords, patterns, suffix list, prompts).
// PROBEGEN_DATA_DIR in the environment overrides the build-time location.
inline std::filesystem::path data_dir() {
    if (const char* env = std::getenv("PROBEGEN_DATA_DIR"); env && *env) {
        return env;
    }
#ifdef PROBEGEN_DEFAULT_DATA_DIR
    return PROBEGEN_DEFAULT_DATA_DIR;
#else
    return "data";
#endif
}

}  // namespace probegen
