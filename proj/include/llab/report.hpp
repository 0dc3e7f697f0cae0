#pragma once

#include <string>

#include <json.hpp>

namespace llab {

inline constexpr const char* kToolVersion = "llab 0.1.0";

// FNV-1a 64 of the raw bytes, hex-encoded. Good enough to pin report inputs.
std::string digest_hex(const std::string& bytes);

std::string read_file(const std::string& path);

// Temp file + rename so readers never observe a half-written report.
void write_file_atomic(const std::string& path, const std::string& contents);

// Stamps version and the digest of the concatenated input files.
void stamp_report(nlohmann::json& report, const std::string& input_bytes);

}  // namespace llab
