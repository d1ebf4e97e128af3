#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "peaont/cipher.hpp"
#include "peaont/fragment_set.hpp"
#include "peaont/manifest.hpp"

namespace peaont {

struct ProtectResult {
    FragmentSet fragments;
    Manifest manifest;
};

/// Uniform harness over the fragmentation schemes. recover(protect(x)) == x
/// for every scheme.
class FragmentationScheme {
public:
    virtual ~FragmentationScheme() = default;

    virtual SchemeId id() const = 0;

    /// The data path alone: pad, encrypt, transform, split. This is what the
    /// benchmark times.
    virtual FragmentSet protect_fragments(std::span<const std::uint8_t> data, const Params& params,
                                          std::span<const std::uint8_t> key, EntropySource& entropy,
                                          OpCounters& counters) const = 0;

    /// protect_fragments plus the recovery manifest (digests over the final
    /// fragments and the original plaintext).
    ProtectResult protect(std::span<const std::uint8_t> data, const Params& params,
                          std::span<const std::uint8_t> key, EntropySource& entropy,
                          OpCounters& counters) const;

    virtual std::vector<std::uint8_t> recover(const FragmentSet& fs, const Manifest& manifest,
                                              std::span<const std::uint8_t> key,
                                              OpCounters& counters) const = 0;
};

std::unique_ptr<FragmentationScheme> make_scheme(SchemeId id);

/// Manifest for a finished protect run: fragment digests over the final
/// payloads plus a digest of the original plaintext for recovery
/// self-checking.
Manifest build_manifest(SchemeId scheme, const Params& params, std::uint64_t original_length,
                        std::uint64_t padded_blocks, const FragmentSet& fragments,
                        std::span<const std::uint8_t> original_data);

/// Completeness, scheme and per-fragment digest verification against a
/// manifest. Throws IntegrityError naming the offending fragment(s).
void verify_fragments(const FragmentSet& fs, const Manifest& manifest, SchemeId expected_scheme);

struct ExpectedCounters {
    std::uint64_t block_cipher_ops = 0;
    std::uint64_t xor_ops = 0;
};

/// The per-scheme operation-count law for a protect run over l total blocks,
/// under the documented accounting convention.
ExpectedCounters expected_protect_counters(SchemeId scheme, const Params& params, std::size_t total_blocks);

} // namespace peaont
