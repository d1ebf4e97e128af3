#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "peaont/cipher.hpp"
#include "peaont/fragment_set.hpp"
#include "peaont/manifest.hpp"
#include "peaont/scheme.hpp"

namespace peaont {

/// Step 1: fragment whole-block plaintext into k fragments and encrypt the
/// first e of them as one contiguous CBC stream.
///
/// padded_plain holds m blocks with (m + 1) divisible by k. The result has
/// l = m + 1 blocks: stream position 0 is the IV block, positions
/// 1 .. e*#f-1 are ciphertext, the rest carry plaintext unmodified.
/// Fragment j owns stream positions [j*#f, (j+1)*#f).
///
/// Counter convention: the CBC pass adds e*#f - 1 to both counters and the
/// IV slot is charged as one more of each, so a full forward run totals
/// e*l/k cipher ops and e*l/k + 2l xors.
FragmentSet fragment_and_encrypt(std::span<const std::uint8_t> padded_plain, const Params& params,
                                 std::span<const std::uint8_t> key, std::span<const std::uint8_t> iv,
                                 OpCounters& counters);

/// Step 2, and its own inverse: per row i, sum = XOR of the k blocks at
/// in-fragment offset i, then every block in the row gets XORed with sum.
/// Toggles PartiallyEncrypted <-> Transformed. Charges 2l xor ops.
/// Rejects odd k: the transform is an involution only for even k.
void aont_transform(FragmentSet& fs, OpCounters& counters);

/// Full inverse pipeline: verify fragment digests, undo the transform,
/// CBC-decrypt the encrypted region with the recovered IV block, reassemble
/// and truncate to manifest.original_length. When the manifest carries a
/// plaintext digest, the output is checked against it.
std::vector<std::uint8_t> defragment(const FragmentSet& fs, const Manifest& manifest,
                                     std::span<const std::uint8_t> key, OpCounters& counters);

/// pad -> fragment_and_encrypt -> aont_transform, and the inverse.
class PeAontScheme final : public FragmentationScheme {
public:
    SchemeId id() const override { return SchemeId::PeAont; }
    FragmentSet protect_fragments(std::span<const std::uint8_t> data, const Params& params,
                                  std::span<const std::uint8_t> key, EntropySource& entropy,
                                  OpCounters& counters) const override;
    std::vector<std::uint8_t> recover(const FragmentSet& fs, const Manifest& manifest,
                                      std::span<const std::uint8_t> key,
                                      OpCounters& counters) const override;
};

} // namespace peaont
