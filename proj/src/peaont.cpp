#include "peaont/peaont.hpp"

#include <cstring>

#include "peaont/block_model.hpp"
#include "peaont/bytes.hpp"
#include "peaont/digest.hpp"
#include "peaont/errors.hpp"

namespace peaont {

namespace {

// Shared core of the step-1 paths: the stream already holds
// [IV | m plaintext blocks]; encrypt positions 1 .. e*#f - 1 in place as one
// contiguous CBC stream chained from the IV.
void encrypt_leading_fragments(FragmentSet& fs, std::span<const std::uint8_t> key,
                               OpCounters& counters) {
    const Params& params = fs.params();
    const std::size_t bs = params.block_size;
    const std::size_t enc_blocks = static_cast<std::size_t>(params.e) * fs.blocks_per_fragment();
    if (enc_blocks < 2) {
        throw ParamsError("e * blocks_per_fragment must be at least 2 so the encrypted region "
                          "holds the IV plus at least one ciphertext block");
    }

    auto stream = fs.bytes();
    auto iv = stream.first(bs);
    auto region = stream.subspan(bs, (enc_blocks - 1) * bs);
    cbc_encrypt(get_cipher(params.cipher), key, iv, region, region, counters);

    // The IV slot is charged as one cipher op and one xor, bringing the
    // forward totals to e*l/k of each.
    counters.block_cipher_ops += 1;
    counters.xor_ops += 1;
}

} // namespace

FragmentSet fragment_and_encrypt(std::span<const std::uint8_t> padded_plain, const Params& params,
                                 std::span<const std::uint8_t> key, std::span<const std::uint8_t> iv,
                                 OpCounters& counters) {
    const std::size_t bs = params.block_size;
    const std::size_t k = static_cast<std::size_t>(params.k);

    if (padded_plain.empty() || padded_plain.size() % bs != 0) {
        throw ParamsError("plaintext must be a non-empty whole number of blocks");
    }
    const std::size_t m = padded_plain.size() / bs;
    if ((m + 1) % k != 0) {
        throw ParamsError("plaintext block count + 1 must be divisible by k (got m=" +
                          std::to_string(m) + ", k=" + std::to_string(k) + ")");
    }
    if (iv.size() != bs) {
        throw ParamsError("iv must be one block (" + std::to_string(bs) + " bytes)");
    }

    FragmentSet fs(params, (m + 1) / k, FragmentState::PartiallyEncrypted);
    auto stream = fs.bytes();
    std::memcpy(stream.data(), iv.data(), bs);
    std::memcpy(stream.data() + bs, padded_plain.data(), padded_plain.size());
    encrypt_leading_fragments(fs, key, counters);
    return fs;
}

void aont_transform(FragmentSet& fs, OpCounters& counters) {
    const Params& p = fs.params();
    if (p.k % 2 != 0) {
        throw ParamsError("k must be even: the all-or-nothing transform is an involution only "
                          "for an even number of fragments");
    }
    if (fs.state() == FragmentState::Raw) {
        throw ParamsError("fragment set must be partially encrypted (or transformed) before the "
                          "all-or-nothing transform");
    }
    if (!fs.complete()) {
        throw IntegrityError("cannot transform an incomplete fragment set");
    }

    const std::size_t frag_bytes = fs.blocks_per_fragment() * p.block_size;
    std::vector<std::uint8_t> sums(frag_bytes, 0);

    // Row sums: sums[i] accumulates the XOR of the k blocks at in-fragment
    // offset i. Fragment-major iteration keeps both passes sequential.
    for (int j = 0; j < p.k; ++j) {
        xor_bytes(sums, fs.fragment(static_cast<std::size_t>(j)));
    }
    for (int j = 0; j < p.k; ++j) {
        xor_bytes(fs.fragment(static_cast<std::size_t>(j)), sums);
    }

    counters.xor_ops += 2 * static_cast<std::uint64_t>(fs.total_blocks());
    fs.set_state(fs.state() == FragmentState::PartiallyEncrypted ? FragmentState::Transformed
                                                                 : FragmentState::PartiallyEncrypted);
}

std::vector<std::uint8_t> defragment(const FragmentSet& fs, const Manifest& manifest,
                                     std::span<const std::uint8_t> key, OpCounters& counters) {
    verify_fragments(fs, manifest, SchemeId::PeAont);
    if (fs.state() != FragmentState::Transformed) {
        throw ParamsError("defragment expects a transformed fragment set, got " +
                          std::string(to_string(fs.state())));
    }

    const Params& p = fs.params();
    const std::size_t bs = p.block_size;
    const std::size_t bpf = fs.blocks_per_fragment();
    const std::size_t enc_blocks = static_cast<std::size_t>(p.e) * bpf;

    FragmentSet work = fs;
    aont_transform(work, counters);

    auto stream = work.bytes();
    auto iv = stream.first(bs);
    auto region = stream.subspan(bs, (enc_blocks - 1) * bs);
    cbc_decrypt(get_cipher(p.cipher), key, iv, region, region, counters);
    counters.block_cipher_ops += 1;
    counters.xor_ops += 1;

    const std::size_t avail = (work.total_blocks() - 1) * bs;
    if (manifest.original_length > avail) {
        throw IntegrityError("manifest original_length exceeds recovered data");
    }
    std::vector<std::uint8_t> out(stream.begin() + bs,
                                  stream.begin() + bs + manifest.original_length);

    if (manifest.plaintext_digest && sha256(out) != *manifest.plaintext_digest) {
        throw WrongKeyError("recovered plaintext failed the manifest digest check "
                            "(wrong key or corrupted fragments)");
    }
    return out;
}

FragmentSet PeAontScheme::protect_fragments(std::span<const std::uint8_t> data,
                                            const Params& params,
                                            std::span<const std::uint8_t> key,
                                            EntropySource& entropy, OpCounters& counters) const {
    const std::size_t bs = params.block_size;
    const std::size_t m = padded_block_count(data.size(), params);
    const Block iv = random_iv(entropy, bs);

    // Build the stream in place; the zero tail of the last block is the pad.
    FragmentSet fs(params, (m + 1) / params.k, FragmentState::PartiallyEncrypted);
    auto stream = fs.bytes();
    std::memcpy(stream.data(), iv.data(), bs);
    std::memcpy(stream.data() + bs, data.data(), data.size());

    encrypt_leading_fragments(fs, key, counters);
    aont_transform(fs, counters);
    return fs;
}

std::vector<std::uint8_t> PeAontScheme::recover(const FragmentSet& fs, const Manifest& manifest,
                                                std::span<const std::uint8_t> key,
                                                OpCounters& counters) const {
    return defragment(fs, manifest, key, counters);
}

} // namespace peaont
