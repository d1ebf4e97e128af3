#include "peaont/scheme.hpp"

#include "peaont/baselines.hpp"
#include "peaont/digest.hpp"
#include "peaont/errors.hpp"
#include "peaont/peaont.hpp"

namespace peaont {

ProtectResult FragmentationScheme::protect(std::span<const std::uint8_t> data,
                                           const Params& params,
                                           std::span<const std::uint8_t> key,
                                           EntropySource& entropy, OpCounters& counters) const {
    FragmentSet fs = protect_fragments(data, params, key, entropy, counters);
    // l = m' + 1: the stream always holds the padded plaintext plus the IV block.
    Manifest manifest = build_manifest(id(), params, data.size(), fs.total_blocks() - 1, fs, data);
    return ProtectResult{std::move(fs), std::move(manifest)};
}

std::unique_ptr<FragmentationScheme> make_scheme(SchemeId id) {
    switch (id) {
    case SchemeId::PeAont: return std::make_unique<PeAontScheme>();
    case SchemeId::EncSplit: return std::make_unique<EncSplitScheme>();
    case SchemeId::Bastion: return std::make_unique<BastionScheme>();
    case SchemeId::Sfd: return std::make_unique<SfdScheme>();
    }
    throw ParamsError("unknown scheme id");
}

Manifest build_manifest(SchemeId scheme, const Params& params, std::uint64_t original_length,
                        std::uint64_t padded_blocks, const FragmentSet& fragments,
                        std::span<const std::uint8_t> original_data) {
    Manifest m;
    m.scheme = scheme;
    m.params = params;
    m.original_length = original_length;
    m.padded_blocks = padded_blocks;
    m.fragment_digests.reserve(static_cast<std::size_t>(params.k));
    for (int j = 0; j < params.k; ++j) {
        m.fragment_digests.push_back(sha256(fragments.fragment(static_cast<std::size_t>(j))));
    }
    m.plaintext_digest = sha256(original_data);
    return m;
}

void verify_fragments(const FragmentSet& fs, const Manifest& manifest, SchemeId expected_scheme) {
    if (manifest.scheme != expected_scheme) {
        throw IntegrityError(std::string("manifest is for scheme ") + to_string(manifest.scheme) +
                             ", expected " + to_string(expected_scheme));
    }
    const Params& p = fs.params();
    if (p.k != manifest.params.k || p.e != manifest.params.e ||
        p.block_size != manifest.params.block_size || p.cipher != manifest.params.cipher) {
        throw IntegrityError("fragment set parameters do not match the manifest");
    }
    if (fs.blocks_per_fragment() * static_cast<std::size_t>(p.k) != manifest.padded_blocks + 1) {
        throw IntegrityError("fragment set geometry does not match the manifest");
    }

    const auto missing = fs.missing_indices();
    if (!missing.empty()) {
        std::string list;
        for (std::size_t i : missing) {
            list += list.empty() ? "" : ", ";
            list += std::to_string(i);
        }
        throw IntegrityError("missing fragment(s): " + list + "; recovery needs all " +
                             std::to_string(p.k) + " fragments");
    }
    for (int j = 0; j < p.k; ++j) {
        if (sha256(fs.fragment(static_cast<std::size_t>(j))) !=
            manifest.fragment_digests[static_cast<std::size_t>(j)]) {
            throw IntegrityError("fragment " + std::to_string(j) + " digest mismatch");
        }
    }
}

ExpectedCounters expected_protect_counters(SchemeId scheme, const Params& params,
                                           std::size_t total_blocks) {
    const std::uint64_t l = total_blocks;
    ExpectedCounters c;
    switch (scheme) {
    case SchemeId::PeAont:
        // e*l/k block cipher ops; the same again plus 2l xors.
        c.block_cipher_ops = static_cast<std::uint64_t>(params.e) * l / params.k;
        c.xor_ops = c.block_cipher_ops + 2 * l;
        break;
    case SchemeId::EncSplit:
    case SchemeId::Sfd:
        c.block_cipher_ops = l - 1;
        c.xor_ops = l - 1;
        break;
    case SchemeId::Bastion:
        c.block_cipher_ops = l - 1;
        c.xor_ops = 3 * l - 1;
        break;
    }
    return c;
}

} // namespace peaont
