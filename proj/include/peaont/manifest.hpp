#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "peaont/digest.hpp"
#include "peaont/params.hpp"

namespace peaont {

inline constexpr std::uint16_t kFormatVersion = 1;

/// Recovery metadata. Carries no key and no plaintext. Replicated to every
/// storage site alongside the fragments.
struct Manifest {
    std::uint16_t version = kFormatVersion;
    SchemeId scheme = SchemeId::PeAont;
    Params params;
    std::uint64_t original_length = 0;
    std::uint64_t padded_blocks = 0;
    std::vector<Digest> fragment_digests;          // exactly k entries, over payload bytes
    std::vector<std::string> placement;            // site_id per fragment; empty until planned
    std::optional<Digest> plaintext_digest;        // recovery self-check

    /// Canonical serialization; the manifest digest and the on-disk file are
    /// both this exact byte string.
    std::string to_json() const;
    static Manifest from_json(std::string_view text);

    Digest digest() const;
};

} // namespace peaont
