#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "peaont/cipher.hpp"
#include "peaont/fragment_set.hpp"
#include "peaont/scheme.hpp"

namespace peaont {

/// Encrypt everything, split the stream contiguously into k fragments.
class EncSplitScheme final : public FragmentationScheme {
public:
    SchemeId id() const override { return SchemeId::EncSplit; }
    FragmentSet protect_fragments(std::span<const std::uint8_t> data, const Params& params,
                                  std::span<const std::uint8_t> key, EntropySource& entropy,
                                  OpCounters& counters) const override;
    std::vector<std::uint8_t> recover(const FragmentSet& fs, const Manifest& manifest,
                                      std::span<const std::uint8_t> key,
                                      OpCounters& counters) const override;
};

/// Encrypt everything, then multiply the whole l-block ciphertext by the
/// zero-diagonal all-ones matrix over GF(2), then split.
class BastionScheme final : public FragmentationScheme {
public:
    SchemeId id() const override { return SchemeId::Bastion; }
    FragmentSet protect_fragments(std::span<const std::uint8_t> data, const Params& params,
                                  std::span<const std::uint8_t> key, EntropySource& entropy,
                                  OpCounters& counters) const override;
    std::vector<std::uint8_t> recover(const FragmentSet& fs, const Manifest& manifest,
                                      std::span<const std::uint8_t> key,
                                      OpCounters& counters) const override;
};

/// Simplified SFD: encrypt everything, separate consecutive blocks over the
/// fragments round-robin, then interleave bit-planes across the fragments of
/// each round. The bit step is this implementation's concretization; outputs
/// are labeled "simplified SFD".
class SfdScheme final : public FragmentationScheme {
public:
    SchemeId id() const override { return SchemeId::Sfd; }
    FragmentSet protect_fragments(std::span<const std::uint8_t> data, const Params& params,
                                  std::span<const std::uint8_t> key, EntropySource& entropy,
                                  OpCounters& counters) const override;
    std::vector<std::uint8_t> recover(const FragmentSet& fs, const Manifest& manifest,
                                      std::span<const std::uint8_t> key,
                                      OpCounters& counters) const override;
};

/// Bastion's transform on a raw stream of whole blocks: every block gets
/// XORed with the XOR of all the others. Its own inverse for an even block
/// count; rejects odd counts. Charges 2l xor ops.
void bastion_transform(std::span<std::uint8_t> stream, std::size_t block_size, OpCounters& counters);

/// SFD step one: stream block i -> (fragment i mod k, slot i div k).
/// `out` must be a fragment-major buffer of the same size.
void sfd_separate_blocks(std::span<const std::uint8_t> stream, std::size_t block_size, int k,
                         std::span<std::uint8_t> out);

/// SFD step two: within each slot, bit position b of the block on fragment i
/// moves to fragment (i + b) mod k, same slot, same bit position. Operates on
/// the fragment-major buffer produced by sfd_separate_blocks.
void sfd_disperse_bits(std::span<const std::uint8_t> separated, std::size_t block_size, int k,
                       std::span<std::uint8_t> out);

/// Inverse of sfd_disperse_bits.
void sfd_gather_bits(std::span<const std::uint8_t> dispersed, std::size_t block_size, int k,
                     std::span<std::uint8_t> out);

/// Inverse of sfd_separate_blocks.
void sfd_merge_blocks(std::span<const std::uint8_t> separated, std::size_t block_size, int k,
                      std::span<std::uint8_t> out);

} // namespace peaont
