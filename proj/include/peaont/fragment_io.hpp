#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "peaont/digest.hpp"
#include "peaont/fragment_set.hpp"
#include "peaont/manifest.hpp"

namespace peaont {

inline constexpr std::array<std::uint8_t, 4> kFragmentMagic = {'P', 'E', 'A', '1'};

// magic(4) version(2) scheme(1) k(2) e(2) fragment_index(2) block_size(2)
// blocks_per_fragment(8) manifest_digest(32); all integers little-endian.
inline constexpr std::size_t kFragmentHeaderSize = 55;

struct FragmentHeader {
    std::uint16_t version = kFormatVersion;
    SchemeId scheme = SchemeId::PeAont;
    std::uint16_t k = 0;
    std::uint16_t e = 0;
    std::uint16_t fragment_index = 0;
    std::uint16_t block_size = 0;
    std::uint64_t blocks_per_fragment = 0;
    Digest manifest_digest{};

    std::size_t payload_size() const {
        return static_cast<std::size_t>(blocks_per_fragment) * block_size;
    }
};

/// Serializes one fragment of the set to the wire format.
std::vector<std::uint8_t> serialize_fragment(const FragmentSet& fs, std::size_t fragment_index,
                                             SchemeId scheme, const Digest& manifest_digest);

/// Header-only parse; validates magic, version and length consistency of the
/// header itself (payload may be absent).
FragmentHeader parse_fragment_header(std::span<const std::uint8_t> bytes);

/// Full parse; additionally requires the payload to be exactly
/// blocks_per_fragment * block_size bytes.
std::pair<FragmentHeader, std::vector<std::uint8_t>>
deserialize_fragment(std::span<const std::uint8_t> bytes);

/// Rebuilds a FragmentSet from serialized fragments, cross-checking every
/// header against the manifest (scheme, k, e, geometry, manifest digest) and
/// every payload against its manifest digest entry. All k fragments must be
/// present.
FragmentSet assemble_fragments(const Manifest& manifest,
                               std::span<const std::vector<std::uint8_t>> fragment_files);

} // namespace peaont
