#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace peaont {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> data);

/// Write to a sibling temp file, then rename into place.
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data);

} // namespace peaont
