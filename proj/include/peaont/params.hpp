#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace peaont {

enum class CipherId {
    Aes128,
    NullTest, // identity cipher; every pipeline property is hand-checkable
};

enum class SchemeId : std::uint8_t {
    PeAont = 1,
    EncSplit = 2,
    Bastion = 3,
    Sfd = 4,
};

/// What the (k, e) choice buys, verbatim classification:
///   Full            e = k-1, e >= 3, k even, k >= 4: data inside fragments
///                   stays protected under key exposure unless all k
///                   fragments are gathered.
///   SingleSite      3 <= e <= k-2, k even, k >= 4: protection holds only
///                   against an attacker confined to one storage site.
///   PerformanceOnly everything else that is structurally valid.
enum class SecurityLevel {
    Full,
    SingleSite,
    PerformanceOnly,
};

const char* to_string(CipherId id);
const char* to_string(SchemeId id);
const char* to_string(SecurityLevel level);

CipherId cipher_from_string(std::string_view name);
SchemeId scheme_from_string(std::string_view name);

std::size_t cipher_native_width(CipherId id);
std::size_t cipher_key_length(CipherId id);

struct Params {
    int k = 0;
    int e = 0;
    std::size_t block_size = 16;
    CipherId cipher = CipherId::Aes128;
    SecurityLevel security_level = SecurityLevel::PerformanceOnly;
};

/// Checks (k, e, block_size, cipher) and classifies the security level.
/// Pure: identical inputs yield identical Params. Throws ParamsError on
/// k < 2, e outside [1, k-1], or a block size the cipher cannot serve.
Params validate_params(int k, int e, std::size_t block_size, CipherId cipher);

} // namespace peaont
