#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dlsim {

std::vector<std::uint8_t> read_file_bytes(const std::string& path);
std::string read_file_text(const std::string& path);

/// Writes to `path + ".tmp"` and renames over `path`.
void write_file_atomic(const std::string& path, std::string_view contents);
void write_file_atomic(const std::string& path, const std::vector<std::uint8_t>& contents);

}  // namespace dlsim
