#include "peaont/params.hpp"

#include <string>

#include "peaont/errors.hpp"

namespace peaont {

const char* to_string(CipherId id) {
    switch (id) {
    case CipherId::Aes128: return "AES-128";
    case CipherId::NullTest: return "NULL-TEST";
    }
    return "?";
}

const char* to_string(SchemeId id) {
    switch (id) {
    case SchemeId::PeAont: return "PE-AONT";
    case SchemeId::EncSplit: return "ENC_SPLIT";
    case SchemeId::Bastion: return "BASTION";
    case SchemeId::Sfd: return "SFD";
    }
    return "?";
}

const char* to_string(SecurityLevel level) {
    switch (level) {
    case SecurityLevel::Full: return "FULL";
    case SecurityLevel::SingleSite: return "SINGLE_SITE";
    case SecurityLevel::PerformanceOnly: return "PERFORMANCE_ONLY";
    }
    return "?";
}

CipherId cipher_from_string(std::string_view name) {
    if (name == "AES-128" || name == "aes-128" || name == "aes128") return CipherId::Aes128;
    if (name == "NULL-TEST" || name == "null-test" || name == "null") return CipherId::NullTest;
    throw ParamsError("unknown cipher '" + std::string(name) + "' (expected AES-128 or NULL-TEST)");
}

SchemeId scheme_from_string(std::string_view name) {
    if (name == "PE-AONT" || name == "pe-aont" || name == "peaont") return SchemeId::PeAont;
    if (name == "ENC_SPLIT" || name == "enc-split" || name == "enc_split") return SchemeId::EncSplit;
    if (name == "BASTION" || name == "bastion") return SchemeId::Bastion;
    if (name == "SFD" || name == "sfd") return SchemeId::Sfd;
    throw ParamsError("unknown scheme '" + std::string(name) + "'");
}

std::size_t cipher_native_width(CipherId id) {
    switch (id) {
    case CipherId::Aes128: return 16;
    case CipherId::NullTest: return 16;
    }
    return 16;
}

std::size_t cipher_key_length(CipherId id) {
    switch (id) {
    case CipherId::Aes128: return 16;
    case CipherId::NullTest: return 16;
    }
    return 16;
}

namespace {

SecurityLevel classify(int k, int e) {
    const bool shape_ok = k % 2 == 0 && k >= 4;
    if (shape_ok && e == k - 1 && e >= 3) return SecurityLevel::Full;
    if (shape_ok && e >= 3 && e <= k - 2) return SecurityLevel::SingleSite;
    return SecurityLevel::PerformanceOnly;
}

} // namespace

Params validate_params(int k, int e, std::size_t block_size, CipherId cipher) {
    if (k < 2) {
        throw ParamsError("k must be at least 2, got " + std::to_string(k));
    }
    if (e < 1) {
        throw ParamsError("e must be at least 1, got " + std::to_string(e));
    }
    if (e >= k) {
        throw ParamsError("e must be less than k (got e=" + std::to_string(e) +
                          ", k=" + std::to_string(k) + ")");
    }
    const std::size_t width = cipher_native_width(cipher);
    if (block_size == 0 || block_size % width != 0) {
        throw ParamsError("block_size must be a positive multiple of the cipher's native width (" +
                          std::to_string(width) + ")");
    }
    if (block_size != width) {
        // Multi-width blocks would break the one-op-per-block accounting.
        throw ParamsError("block_size " + std::to_string(block_size) +
                          " is unsupported: only the cipher's native width (" +
                          std::to_string(width) + ") is implemented");
    }

    Params p;
    p.k = k;
    p.e = e;
    p.block_size = block_size;
    p.cipher = cipher;
    p.security_level = classify(k, e);
    return p;
}

} // namespace peaont
