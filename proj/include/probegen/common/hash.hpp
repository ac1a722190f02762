#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace probegen {

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// Stable 64-bit FNV-1a, used to derive RNG streams from strings.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace probegen
