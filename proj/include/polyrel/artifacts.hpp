#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace polyrel {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// FNV-1a 64-bit digest, hex encoded. Used to tie artifacts to their inputs.
std::string fnv1a_hex(std::string_view bytes);

/// Digest of a file's raw bytes.
std::string file_digest(const std::filesystem::path& path);

nlohmann::json load_json(const std::filesystem::path& path);

/// Serialize with 2-space indent and write via temp file + rename, so readers
/// never observe a partial artifact. Output is byte-stable for equal inputs.
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);

} // namespace polyrel
