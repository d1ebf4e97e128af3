#include "peaont/digest.hpp"

#include <openssl/evp.h>

#include "peaont/bytes.hpp"
#include "peaont/errors.hpp"

namespace peaont {

Digest sha256(std::span<const std::uint8_t> data) {
    Digest out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != kDigestSize) {
        throw Error("SHA-256 computation failed");
    }
    return out;
}

std::string digest_hex(const Digest& d) {
    return to_hex(d);
}

Digest digest_from_hex(std::string_view hex) {
    const auto bytes = from_hex(hex);
    if (bytes.size() != kDigestSize) {
        throw IoError("digest must be 32 bytes, got " + std::to_string(bytes.size()));
    }
    Digest d{};
    std::copy(bytes.begin(), bytes.end(), d.begin());
    return d;
}

} // namespace peaont
