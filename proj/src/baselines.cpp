#include "peaont/baselines.hpp"

#include <cstring>

#include "peaont/block_model.hpp"
#include "peaont/bytes.hpp"
#include "peaont/digest.hpp"
#include "peaont/errors.hpp"

namespace peaont {

namespace {

// Builds the l-block stream [IV | plaintext | zero pad] directly in a
// fragment set; the fragment-major layout is the stream, so the contiguous
// split is free.
FragmentSet make_stream_set(const Params& params, std::span<const std::uint8_t> iv,
                            std::span<const std::uint8_t> data) {
    const std::size_t bs = params.block_size;
    const std::size_t m = padded_block_count(data.size(), params);
    FragmentSet fs(params, (m + 1) / params.k, FragmentState::Raw);
    auto stream = fs.bytes();
    std::memcpy(stream.data(), iv.data(), bs);
    std::memcpy(stream.data() + bs, data.data(), data.size());
    return fs;
}

std::vector<std::uint8_t> decrypt_stream_and_truncate(std::vector<std::uint8_t> stream,
                                                      const Manifest& manifest,
                                                      std::span<const std::uint8_t> key,
                                                      OpCounters& counters) {
    const std::size_t bs = manifest.params.block_size;
    auto bytes = std::span<std::uint8_t>(stream);
    auto iv = bytes.first(bs);
    auto region = bytes.subspan(bs);
    cbc_decrypt(get_cipher(manifest.params.cipher), key, iv, region, region, counters);

    if (manifest.original_length > region.size()) {
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

} // namespace

FragmentSet EncSplitScheme::protect_fragments(std::span<const std::uint8_t> data,
                                              const Params& params,
                                              std::span<const std::uint8_t> key,
                                              EntropySource& entropy, OpCounters& counters) const {
    const Block iv = random_iv(entropy, params.block_size);

    FragmentSet fs = make_stream_set(params, iv, data);
    auto region = fs.bytes().subspan(params.block_size);
    cbc_encrypt(get_cipher(params.cipher), key, iv, region, region, counters);
    fs.set_state(FragmentState::Transformed);
    return fs;
}

std::vector<std::uint8_t> EncSplitScheme::recover(const FragmentSet& fs, const Manifest& manifest,
                                                  std::span<const std::uint8_t> key,
                                                  OpCounters& counters) const {
    verify_fragments(fs, manifest, SchemeId::EncSplit);
    std::vector<std::uint8_t> stream(fs.bytes().begin(), fs.bytes().end());
    return decrypt_stream_and_truncate(std::move(stream), manifest, key, counters);
}

void bastion_transform(std::span<std::uint8_t> stream, std::size_t block_size,
                       OpCounters& counters) {
    if (block_size == 0 || stream.empty() || stream.size() % block_size != 0) {
        throw ParamsError("stream must be a non-empty whole number of blocks");
    }
    const std::size_t l = stream.size() / block_size;
    if (l % 2 != 0) {
        throw ParamsError("total block count must be even for the Bastion transform to be "
                          "invertible (got l=" + std::to_string(l) + ")");
    }

    std::vector<std::uint8_t> sum(block_size, 0);
    for (std::size_t i = 0; i < l; ++i) {
        xor_bytes(sum, stream.subspan(i * block_size, block_size));
    }
    for (std::size_t i = 0; i < l; ++i) {
        xor_bytes(stream.subspan(i * block_size, block_size), sum);
    }
    counters.xor_ops += 2 * static_cast<std::uint64_t>(l);
}

FragmentSet BastionScheme::protect_fragments(std::span<const std::uint8_t> data,
                                             const Params& params,
                                             std::span<const std::uint8_t> key,
                                             EntropySource& entropy, OpCounters& counters) const {
    const std::size_t l = padded_block_count(data.size(), params) + 1;
    if (l % 2 != 0) {
        throw ParamsError("Bastion needs an even total block count; k=" + std::to_string(params.k) +
                          " yields l=" + std::to_string(l));
    }
    const Block iv = random_iv(entropy, params.block_size);

    FragmentSet fs = make_stream_set(params, iv, data);
    auto stream = fs.bytes();
    auto region = stream.subspan(params.block_size);
    cbc_encrypt(get_cipher(params.cipher), key, iv, region, region, counters);
    bastion_transform(stream, params.block_size, counters);
    fs.set_state(FragmentState::Transformed);
    return fs;
}

std::vector<std::uint8_t> BastionScheme::recover(const FragmentSet& fs, const Manifest& manifest,
                                                 std::span<const std::uint8_t> key,
                                                 OpCounters& counters) const {
    verify_fragments(fs, manifest, SchemeId::Bastion);
    std::vector<std::uint8_t> stream(fs.bytes().begin(), fs.bytes().end());
    bastion_transform(stream, manifest.params.block_size, counters);
    return decrypt_stream_and_truncate(std::move(stream), manifest, key, counters);
}

namespace {

void check_sfd_args(std::span<const std::uint8_t> in, std::size_t block_size, int k,
                    std::span<const std::uint8_t> out) {
    if (block_size == 0 || in.empty() || in.size() % block_size != 0) {
        throw ParamsError("stream must be a non-empty whole number of blocks");
    }
    if (in.size() != out.size()) {
        throw ParamsError("input and output buffers must have equal size");
    }
    const std::size_t l = in.size() / block_size;
    if (k < 2 || l % static_cast<std::size_t>(k) != 0) {
        throw ParamsError("block count must be a positive multiple of k");
    }
}

// mask_c selects the bit positions b (little-endian within the block) with
// b mod k == c.
std::vector<std::vector<std::uint8_t>> bit_plane_masks(std::size_t block_size, int k) {
    std::vector<std::vector<std::uint8_t>> masks(static_cast<std::size_t>(k),
                                                 std::vector<std::uint8_t>(block_size, 0));
    const std::size_t bits = block_size * 8;
    for (std::size_t b = 0; b < bits; ++b) {
        masks[b % static_cast<std::size_t>(k)][b / 8] |= static_cast<std::uint8_t>(1u << (b % 8));
    }
    return masks;
}

inline void or_masked(std::uint8_t* dst, const std::uint8_t* src, const std::uint8_t* mask,
                      std::size_t n) {
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        std::uint64_t d, s, m;
        std::memcpy(&d, dst + i, 8);
        std::memcpy(&s, src + i, 8);
        std::memcpy(&m, mask + i, 8);
        d |= s & m;
        std::memcpy(dst + i, &d, 8);
    }
    for (; i < n; ++i) {
        dst[i] |= static_cast<std::uint8_t>(src[i] & mask[i]);
    }
}

} // namespace

void sfd_separate_blocks(std::span<const std::uint8_t> stream, std::size_t block_size, int k,
                         std::span<std::uint8_t> out) {
    check_sfd_args(stream, block_size, k, out);
    const std::size_t l = stream.size() / block_size;
    const std::size_t bpf = l / static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t frag = i % static_cast<std::size_t>(k);
        const std::size_t slot = i / static_cast<std::size_t>(k);
        std::memcpy(out.data() + (frag * bpf + slot) * block_size,
                    stream.data() + i * block_size, block_size);
    }
}

void sfd_merge_blocks(std::span<const std::uint8_t> separated, std::size_t block_size, int k,
                      std::span<std::uint8_t> out) {
    check_sfd_args(separated, block_size, k, out);
    const std::size_t l = separated.size() / block_size;
    const std::size_t bpf = l / static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < l; ++i) {
        const std::size_t frag = i % static_cast<std::size_t>(k);
        const std::size_t slot = i / static_cast<std::size_t>(k);
        std::memcpy(out.data() + i * block_size,
                    separated.data() + (frag * bpf + slot) * block_size, block_size);
    }
}

void sfd_disperse_bits(std::span<const std::uint8_t> separated, std::size_t block_size, int k,
                       std::span<std::uint8_t> out) {
    check_sfd_args(separated, block_size, k, out);
    std::fill(out.begin(), out.end(), 0);
    const std::size_t ku = static_cast<std::size_t>(k);
    const std::size_t l = separated.size() / block_size;
    const std::size_t bpf = l / ku;
    const auto masks = bit_plane_masks(block_size, k);
    const std::size_t active = std::min(ku, block_size * 8);

    for (std::size_t slot = 0; slot < bpf; ++slot) {
        for (std::size_t o = 0; o < ku; ++o) {
            std::uint8_t* dst = out.data() + (o * bpf + slot) * block_size;
            for (std::size_t c = 0; c < active; ++c) {
                const std::size_t src_frag = (o + ku - c % ku) % ku;
                const std::uint8_t* src = separated.data() + (src_frag * bpf + slot) * block_size;
                or_masked(dst, src, masks[c].data(), block_size);
            }
        }
    }
}

void sfd_gather_bits(std::span<const std::uint8_t> dispersed, std::size_t block_size, int k,
                     std::span<std::uint8_t> out) {
    check_sfd_args(dispersed, block_size, k, out);
    std::fill(out.begin(), out.end(), 0);
    const std::size_t ku = static_cast<std::size_t>(k);
    const std::size_t l = dispersed.size() / block_size;
    const std::size_t bpf = l / ku;
    const auto masks = bit_plane_masks(block_size, k);
    const std::size_t active = std::min(ku, block_size * 8);

    for (std::size_t slot = 0; slot < bpf; ++slot) {
        for (std::size_t s = 0; s < ku; ++s) {
            std::uint8_t* dst = out.data() + (s * bpf + slot) * block_size;
            for (std::size_t c = 0; c < active; ++c) {
                const std::size_t src_frag = (s + c) % ku;
                const std::uint8_t* src = dispersed.data() + (src_frag * bpf + slot) * block_size;
                or_masked(dst, src, masks[c].data(), block_size);
            }
        }
    }
}

FragmentSet SfdScheme::protect_fragments(std::span<const std::uint8_t> data, const Params& params,
                                         std::span<const std::uint8_t> key, EntropySource& entropy,
                                         OpCounters& counters) const {
    const std::size_t bs = params.block_size;
    const std::size_t m = padded_block_count(data.size(), params);
    const Block iv = random_iv(entropy, bs);

    std::vector<std::uint8_t> stream((m + 1) * bs, 0);
    std::memcpy(stream.data(), iv.data(), bs);
    std::memcpy(stream.data() + bs, data.data(), data.size());
    auto region = std::span<std::uint8_t>(stream).subspan(bs);
    cbc_encrypt(get_cipher(params.cipher), key, iv, region, region, counters);

    const std::size_t l = stream.size() / bs;
    FragmentSet fs(params, l / params.k, FragmentState::Transformed);
    std::vector<std::uint8_t> separated(stream.size());
    sfd_separate_blocks(stream, bs, params.k, separated);
    sfd_disperse_bits(separated, bs, params.k, fs.bytes());
    return fs;
}

std::vector<std::uint8_t> SfdScheme::recover(const FragmentSet& fs, const Manifest& manifest,
                                             std::span<const std::uint8_t> key,
                                             OpCounters& counters) const {
    verify_fragments(fs, manifest, SchemeId::Sfd);
    const std::size_t bs = manifest.params.block_size;
    std::vector<std::uint8_t> separated(fs.bytes().size());
    sfd_gather_bits(fs.bytes(), bs, manifest.params.k, separated);
    std::vector<std::uint8_t> stream(separated.size());
    sfd_merge_blocks(separated, bs, manifest.params.k, stream);
    return decrypt_stream_and_truncate(std::move(stream), manifest, key, counters);
}

} // namespace peaont
