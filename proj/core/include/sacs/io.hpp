#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace sacs {

inline constexpr int kCsvDigits = 12;

std::uint64_t fnv1a64(std::string_view data);
/// 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view data);
std::string file_fnv1a64_hex(const std::filesystem::path& path);

/// Shortest-stable rendering with `digits` significant digits ("%.*g").
std::string format_number(double v, int digits = kCsvDigits);

/// Writes `contents` to `path`, replacing it; throws std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

std::string tool_version();

}  // namespace sacs
