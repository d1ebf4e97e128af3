#include "peaont/fragment_io.hpp"

#include <algorithm>
#include <cstring>

#include "peaont/bytes.hpp"
#include "peaont/errors.hpp"

namespace peaont {

namespace {

SchemeId scheme_from_wire(std::uint8_t v) {
    switch (v) {
    case 1: return SchemeId::PeAont;
    case 2: return SchemeId::EncSplit;
    case 3: return SchemeId::Bastion;
    case 4: return SchemeId::Sfd;
    }
    throw IoError("unknown scheme id " + std::to_string(v) + " in fragment header");
}

} // namespace

std::vector<std::uint8_t> serialize_fragment(const FragmentSet& fs, std::size_t fragment_index,
                                             SchemeId scheme, const Digest& manifest_digest) {
    const Params& p = fs.params();
    if (fragment_index >= static_cast<std::size_t>(p.k)) {
        throw ParamsError("fragment index " + std::to_string(fragment_index) + " out of range");
    }
    if (!fs.present(fragment_index)) {
        throw IntegrityError("fragment " + std::to_string(fragment_index) + " is missing");
    }

    std::vector<std::uint8_t> out;
    const auto payload = fs.fragment(fragment_index);
    out.reserve(kFragmentHeaderSize + payload.size());

    out.insert(out.end(), kFragmentMagic.begin(), kFragmentMagic.end());
    put_u16le(out, kFormatVersion);
    out.push_back(static_cast<std::uint8_t>(scheme));
    put_u16le(out, static_cast<std::uint16_t>(p.k));
    put_u16le(out, static_cast<std::uint16_t>(p.e));
    put_u16le(out, static_cast<std::uint16_t>(fragment_index));
    put_u16le(out, static_cast<std::uint16_t>(p.block_size));
    put_u64le(out, fs.blocks_per_fragment());
    out.insert(out.end(), manifest_digest.begin(), manifest_digest.end());
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

FragmentHeader parse_fragment_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kFragmentHeaderSize) {
        throw IoError("fragment header truncated: " + std::to_string(bytes.size()) + " of " +
                      std::to_string(kFragmentHeaderSize) + " bytes");
    }
    if (!std::equal(kFragmentMagic.begin(), kFragmentMagic.end(), bytes.begin())) {
        throw IoError("bad fragment magic (not a PEA1 fragment file)");
    }

    FragmentHeader h;
    h.version = get_u16le(bytes.data() + 4);
    if (h.version != kFormatVersion) {
        throw IoError("unsupported fragment format version " + std::to_string(h.version));
    }
    h.scheme = scheme_from_wire(bytes[6]);
    h.k = get_u16le(bytes.data() + 7);
    h.e = get_u16le(bytes.data() + 9);
    h.fragment_index = get_u16le(bytes.data() + 11);
    h.block_size = get_u16le(bytes.data() + 13);
    h.blocks_per_fragment = get_u64le(bytes.data() + 15);
    std::memcpy(h.manifest_digest.data(), bytes.data() + 23, kDigestSize);

    if (h.k < 2 || h.e < 1 || h.e >= h.k || h.block_size == 0 || h.blocks_per_fragment == 0) {
        throw IoError("fragment header carries invalid geometry");
    }
    if (h.fragment_index >= h.k) {
        throw IoError("fragment index " + std::to_string(h.fragment_index) +
                      " out of range for k=" + std::to_string(h.k));
    }
    return h;
}

std::pair<FragmentHeader, std::vector<std::uint8_t>>
deserialize_fragment(std::span<const std::uint8_t> bytes) {
    FragmentHeader h = parse_fragment_header(bytes);
    const std::size_t expected = kFragmentHeaderSize + h.payload_size();
    if (bytes.size() < expected) {
        throw IoError("fragment payload truncated: " + std::to_string(bytes.size()) + " of " +
                      std::to_string(expected) + " bytes");
    }
    if (bytes.size() > expected) {
        throw IoError("fragment file has " + std::to_string(bytes.size() - expected) +
                      " trailing bytes");
    }
    std::vector<std::uint8_t> payload(bytes.begin() + kFragmentHeaderSize, bytes.end());
    return {h, std::move(payload)};
}

FragmentSet assemble_fragments(const Manifest& manifest,
                               std::span<const std::vector<std::uint8_t>> fragment_files) {
    const Params& p = manifest.params;
    const Digest expected_digest = manifest.digest();

    FragmentSet fs(p, static_cast<std::size_t>(manifest.padded_blocks + 1) / p.k,
                   FragmentState::Transformed);
    std::vector<bool> seen(static_cast<std::size_t>(p.k), false);

    for (const auto& file : fragment_files) {
        auto [h, payload] = deserialize_fragment(file);
        if (h.scheme != manifest.scheme) {
            throw IntegrityError(std::string("fragment belongs to scheme ") + to_string(h.scheme) +
                                 ", manifest says " + to_string(manifest.scheme));
        }
        if (h.k != p.k || h.e != p.e || h.block_size != p.block_size ||
            h.blocks_per_fragment != fs.blocks_per_fragment()) {
            throw IntegrityError("fragment " + std::to_string(h.fragment_index) +
                                 " geometry does not match the manifest");
        }
        if (h.manifest_digest != expected_digest) {
            throw IntegrityError("fragment " + std::to_string(h.fragment_index) +
                                 " was written under a different manifest");
        }
        if (sha256(payload) != manifest.fragment_digests[h.fragment_index]) {
            throw IntegrityError("fragment " + std::to_string(h.fragment_index) +
                                 " digest mismatch");
        }
        if (seen[h.fragment_index]) {
            throw IntegrityError("fragment " + std::to_string(h.fragment_index) +
                                 " supplied twice");
        }
        seen[h.fragment_index] = true;
        auto dst = fs.fragment(h.fragment_index);
        std::copy(payload.begin(), payload.end(), dst.begin());
    }

    std::string missing;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) {
            missing += missing.empty() ? "" : ", ";
            missing += std::to_string(i);
        }
    }
    if (!missing.empty()) {
        throw IntegrityError("missing fragment(s): " + missing);
    }
    return fs;
}

} // namespace peaont
