#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

namespace peaont {

inline constexpr std::size_t kDigestSize = 32;

using Digest = std::array<std::uint8_t, kDigestSize>;

/// SHA-256 of the given bytes.
Digest sha256(std::span<const std::uint8_t> data);

std::string digest_hex(const Digest& d);
Digest digest_from_hex(std::string_view hex);

} // namespace peaont
