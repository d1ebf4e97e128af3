#include "peaont/manifest.hpp"

#include <nlohmann/json.hpp>

#include "peaont/bytes.hpp"
#include "peaont/errors.hpp"

namespace peaont {

namespace {

using ordered_json = nlohmann::ordered_json;

} // namespace

std::string Manifest::to_json() const {
    ordered_json j;
    j["version"] = version;
    j["scheme"] = to_string(scheme);
    j["cipher"] = to_string(params.cipher);
    j["k"] = params.k;
    j["e"] = params.e;
    j["block_size"] = params.block_size;
    j["original_length"] = original_length;
    j["padded_blocks"] = padded_blocks;
    ordered_json digests = ordered_json::array();
    for (const Digest& d : fragment_digests) {
        digests.push_back(digest_hex(d));
    }
    j["fragment_digests"] = std::move(digests);
    j["placement"] = placement;
    if (plaintext_digest) {
        j["plaintext_digest"] = digest_hex(*plaintext_digest);
    }
    return j.dump(2) + "\n";
}

Manifest Manifest::from_json(std::string_view text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& ex) {
        throw IoError(std::string("manifest is not valid JSON: ") + ex.what());
    }

    Manifest m;
    try {
        m.version = j.at("version").get<std::uint16_t>();
        if (m.version != kFormatVersion) {
            throw IoError("unsupported manifest version " + std::to_string(m.version));
        }
        m.scheme = scheme_from_string(j.at("scheme").get<std::string>());
        const auto cipher = cipher_from_string(j.at("cipher").get<std::string>());
        m.params = validate_params(j.at("k").get<int>(), j.at("e").get<int>(),
                                   j.at("block_size").get<std::size_t>(), cipher);
        m.original_length = j.at("original_length").get<std::uint64_t>();
        m.padded_blocks = j.at("padded_blocks").get<std::uint64_t>();
        for (const auto& entry : j.at("fragment_digests")) {
            m.fragment_digests.push_back(digest_from_hex(entry.get<std::string>()));
        }
        if (j.contains("placement")) {
            m.placement = j.at("placement").get<std::vector<std::string>>();
        }
        if (j.contains("plaintext_digest")) {
            m.plaintext_digest = digest_from_hex(j.at("plaintext_digest").get<std::string>());
        }
    } catch (const nlohmann::json::exception& ex) {
        throw IoError(std::string("manifest field error: ") + ex.what());
    }

    if (m.fragment_digests.size() != static_cast<std::size_t>(m.params.k)) {
        throw IoError("manifest must carry exactly k fragment digests (k=" +
                      std::to_string(m.params.k) + ", got " +
                      std::to_string(m.fragment_digests.size()) + ")");
    }
    if (!m.placement.empty() && m.placement.size() != static_cast<std::size_t>(m.params.k)) {
        throw IoError("manifest placement must list one site per fragment");
    }
    const std::uint64_t padded_bytes = m.padded_blocks * m.params.block_size;
    if (m.original_length > padded_bytes ||
        padded_bytes >= m.original_length + static_cast<std::uint64_t>(m.params.k) * m.params.block_size) {
        throw IoError("manifest lengths are inconsistent with the padding rule");
    }
    if ((m.padded_blocks + 1) % m.params.k != 0) {
        throw IoError("manifest padded_blocks + 1 must be divisible by k");
    }
    return m;
}

Digest Manifest::digest() const {
    const std::string text = to_json();
    return sha256(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

} // namespace peaont
