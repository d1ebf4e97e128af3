#include <doctest.h>

#include "peaont/errors.hpp"
#include "peaont/params.hpp"

using namespace peaont;

TEST_CASE("validate_params classifies the security level") {
    CHECK(validate_params(4, 3, 16, CipherId::Aes128).security_level == SecurityLevel::Full);
    CHECK(validate_params(6, 3, 16, CipherId::Aes128).security_level == SecurityLevel::SingleSite);
    CHECK(validate_params(3, 2, 16, CipherId::Aes128).security_level ==
          SecurityLevel::PerformanceOnly);
    CHECK(validate_params(8, 7, 16, CipherId::Aes128).security_level == SecurityLevel::Full);
    CHECK(validate_params(8, 4, 16, CipherId::Aes128).security_level == SecurityLevel::SingleSite);

    // e >= 3 is part of both protected regimes.
    CHECK(validate_params(4, 2, 16, CipherId::Aes128).security_level ==
          SecurityLevel::PerformanceOnly);
    CHECK(validate_params(4, 1, 16, CipherId::Aes128).security_level ==
          SecurityLevel::PerformanceOnly);
    // Odd k never classifies as protected.
    CHECK(validate_params(5, 4, 16, CipherId::Aes128).security_level ==
          SecurityLevel::PerformanceOnly);
}

TEST_CASE("validate_params rejects structural nonsense") {
    CHECK_THROWS_AS(validate_params(4, 4, 16, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(4, 5, 16, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(1, 1, 16, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(4, 0, 16, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(4, -1, 16, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(4, 3, 0, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(4, 3, 15, CipherId::Aes128), ParamsError);
    CHECK_THROWS_AS(validate_params(4, 3, 24, CipherId::Aes128), ParamsError);
    // A multiple of the native width but not the width itself.
    CHECK_THROWS_AS(validate_params(4, 3, 32, CipherId::Aes128), ParamsError);
}

TEST_CASE("validate_params is pure") {
    const auto a = validate_params(6, 5, 16, CipherId::NullTest);
    const auto b = validate_params(6, 5, 16, CipherId::NullTest);
    CHECK(a.k == b.k);
    CHECK(a.e == b.e);
    CHECK(a.block_size == b.block_size);
    CHECK(a.cipher == b.cipher);
    CHECK(a.security_level == b.security_level);
    CHECK(a.security_level == SecurityLevel::Full);
}

TEST_CASE("name round trips") {
    CHECK(cipher_from_string(to_string(CipherId::Aes128)) == CipherId::Aes128);
    CHECK(cipher_from_string(to_string(CipherId::NullTest)) == CipherId::NullTest);
    for (auto s : {SchemeId::PeAont, SchemeId::EncSplit, SchemeId::Bastion, SchemeId::Sfd}) {
        CHECK(scheme_from_string(to_string(s)) == s);
    }
    CHECK_THROWS_AS(cipher_from_string("ROT13"), ParamsError);
    CHECK_THROWS_AS(scheme_from_string("mystery"), ParamsError);
}
