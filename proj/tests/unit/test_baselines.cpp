#include <doctest.h>

#include <random>
#include <set>
#include <utility>

#include "peaont/baselines.hpp"
#include "peaont/block_model.hpp"
#include "peaont/errors.hpp"
#include "peaont/peaont.hpp"
#include "test_util.hpp"

using namespace peaont;
using peaont::test::filled_block;
using peaont::test::gf2_j_minus_i_multiply;
using peaont::test::random_bytes;

TEST_CASE("every scheme round-trips random inputs") {
    std::mt19937_64 rng(0x5151);
    SystemEntropySource entropy;

    for (auto scheme_id :
         {SchemeId::PeAont, SchemeId::EncSplit, SchemeId::Bastion, SchemeId::Sfd}) {
        const auto scheme = make_scheme(scheme_id);
        CHECK(scheme->id() == scheme_id);
        for (auto cipher : {CipherId::Aes128, CipherId::NullTest}) {
            for (auto [k, e] : {std::pair{4, 3}, std::pair{6, 3}, std::pair{8, 5}}) {
                const Params params = validate_params(k, e, 16, cipher);
                const auto key = random_bytes(rng, 16);
                const auto data = random_bytes(rng, 1 + rng() % 100000);

                OpCounters c;
                auto result = scheme->protect(data, params, key, entropy, c);
                CHECK(result.manifest.scheme == scheme_id);

                OpCounters c2;
                CHECK(scheme->recover(result.fragments, result.manifest, key, c2) == data);
            }
        }
    }
}

TEST_CASE("enc_split: m=7, k=4 gives 4 fragments of 2 blocks at l-1 cipher ops") {
    std::mt19937_64 rng(0x01);
    SystemEntropySource entropy;
    const EncSplitScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 7 * 16);

    OpCounters c;
    auto result = scheme.protect(data, params, key, entropy, c);
    CHECK(result.fragments.blocks_per_fragment() == 2);
    CHECK(result.fragments.total_blocks() == 8);
    CHECK(c.block_cipher_ops == 7);
    CHECK(c.xor_ops == 7);
}

TEST_CASE("enc_split under key exposure: one fragment partially decrypts") {
    // Fragment 1 holds ciphertext stream positions 2..3 (C2, C3). With the
    // key, C3 decrypts against C2; only the fragment's first block lacks its
    // chaining predecessor.
    std::mt19937_64 rng(0x02);
    SystemEntropySource entropy;
    const EncSplitScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 7 * 16);

    OpCounters c;
    auto result = scheme.protect(data, params, key, entropy, c);

    const auto fragment1 = result.fragments.fragment(1);
    const std::vector<std::uint8_t> c2(fragment1.begin(), fragment1.begin() + 16);
    const std::vector<std::uint8_t> c3(fragment1.begin() + 16, fragment1.end());

    std::vector<std::uint8_t> p3(16);
    OpCounters attack;
    cbc_decrypt(get_cipher(CipherId::Aes128), key, c2, c3, p3, attack);

    // Stream position 3 is ciphertext block C3 = E(P3 ^ C2): the attacker
    // recovers plaintext block 3 (0-based input block 2) from one fragment.
    CHECK(std::equal(p3.begin(), p3.end(), data.begin() + 2 * 16));
}

TEST_CASE("bastion transform: l=4 example and involution") {
    std::vector<std::uint8_t> stream;
    for (std::uint8_t v : {0x01, 0x02, 0x04, 0x08}) {
        const Block b = filled_block(v);
        stream.insert(stream.end(), b.begin(), b.end());
    }

    OpCounters c;
    bastion_transform(stream, 16, c);
    CHECK(c.xor_ops == 8); // 2l

    // Each output block is the XOR of the other three.
    const std::uint8_t expected[4] = {0x0e, 0x0d, 0x0b, 0x07};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t b = 0; b < 16; ++b) {
            CHECK(stream[i * 16 + b] == expected[i]);
        }
    }

    bastion_transform(stream, 16, c);
    const std::uint8_t back[4] = {0x01, 0x02, 0x04, 0x08};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t b = 0; b < 16; ++b) {
            CHECK(stream[i * 16 + b] == back[i]);
        }
    }
}

TEST_CASE("bastion transform equals the brute-force GF(2) oracle") {
    std::mt19937_64 rng(0x03);
    for (std::size_t l : {4u, 6u, 8u}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<Block> blocks;
            for (std::size_t i = 0; i < l; ++i) blocks.push_back(random_bytes(rng, 16));

            std::vector<std::uint8_t> stream;
            for (const auto& b : blocks) stream.insert(stream.end(), b.begin(), b.end());

            OpCounters c;
            bastion_transform(stream, 16, c);

            const auto expected = gf2_j_minus_i_multiply(blocks);
            for (std::size_t i = 0; i < l; ++i) {
                CHECK(std::equal(expected[i].begin(), expected[i].end(),
                                 stream.begin() + static_cast<std::ptrdiff_t>(i * 16)));
            }
        }
    }
}

TEST_CASE("bastion rejects an odd block count") {
    std::vector<std::uint8_t> stream(3 * 16, 0xab);
    OpCounters c;
    CHECK_THROWS_AS(bastion_transform(stream, 16, c), ParamsError);

    // k = 3 with (m+1) % 3 == 0 can yield odd l: protect must refuse.
    std::mt19937_64 rng(0x04);
    SystemEntropySource entropy;
    const BastionScheme scheme;
    const Params params = validate_params(3, 2, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 2 * 16); // m'=2, l=3
    CHECK_THROWS_AS(scheme.protect(data, params, key, entropy, c), ParamsError);
}

TEST_CASE("bastion counters: l-1 cipher ops, 3l-1 xors") {
    std::mt19937_64 rng(0x05);
    SystemEntropySource entropy;
    const BastionScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 39 * 16); // l = 40

    OpCounters c;
    scheme.protect(data, params, key, entropy, c);
    CHECK(c.block_cipher_ops == 39);
    CHECK(c.xor_ops == 3 * 40 - 1);
}

TEST_CASE("sfd block separation is round-robin") {
    // k=2: fragment 0 receives stream blocks {0, 2}, fragment 1 {1, 3}.
    std::vector<std::uint8_t> stream;
    for (std::uint8_t v : {0x10, 0x20, 0x30, 0x40}) {
        const Block b = filled_block(v);
        stream.insert(stream.end(), b.begin(), b.end());
    }
    std::vector<std::uint8_t> separated(stream.size());
    sfd_separate_blocks(stream, 16, 2, separated);

    CHECK(separated[0] == 0x10);
    CHECK(separated[16] == 0x30);
    CHECK(separated[32] == 0x20);
    CHECK(separated[48] == 0x40);

    std::vector<std::uint8_t> merged(stream.size());
    sfd_merge_blocks(separated, 16, 2, merged);
    CHECK(merged == stream);
}

TEST_CASE("sfd bit dispersal splits every block over at least two fragments") {
    // Bit-provenance oracle: light up a single block and watch where its
    // bits land; they must cover min(k, 128) fragments.
    for (int k : {2, 3, 4, 5, 8}) {
        const std::size_t bpf = 3;
        const std::size_t l = static_cast<std::size_t>(k) * bpf;
        for (std::size_t t = 0; t < l; ++t) {
            std::vector<std::uint8_t> stream(l * 16, 0);
            std::fill(stream.begin() + static_cast<std::ptrdiff_t>(t * 16),
                      stream.begin() + static_cast<std::ptrdiff_t>((t + 1) * 16), 0xff);

            std::vector<std::uint8_t> separated(stream.size());
            sfd_separate_blocks(stream, 16, k, separated);
            std::vector<std::uint8_t> dispersed(stream.size());
            sfd_disperse_bits(separated, 16, k, dispersed);

            std::set<std::size_t> touched_fragments;
            for (std::size_t frag = 0; frag < static_cast<std::size_t>(k); ++frag) {
                for (std::size_t b = 0; b < bpf * 16; ++b) {
                    if (dispersed[frag * bpf * 16 + b]) {
                        touched_fragments.insert(frag);
                        break;
                    }
                }
            }
            CHECK(touched_fragments.size() == std::min<std::size_t>(k, 128));
            CHECK(touched_fragments.size() >= 2);
        }
    }
}

TEST_CASE("sfd bit dispersal inverts") {
    std::mt19937_64 rng(0x06);
    for (int k : {2, 3, 4, 7, 16}) {
        const std::size_t l = static_cast<std::size_t>(k) * (1 + rng() % 4);
        const auto stream = random_bytes(rng, l * 16);

        std::vector<std::uint8_t> separated(stream.size());
        sfd_separate_blocks(stream, 16, k, separated);
        std::vector<std::uint8_t> dispersed(stream.size());
        sfd_disperse_bits(separated, 16, k, dispersed);

        std::vector<std::uint8_t> gathered(stream.size());
        sfd_gather_bits(dispersed, 16, k, gathered);
        CHECK(gathered == separated);

        std::vector<std::uint8_t> merged(stream.size());
        sfd_merge_blocks(gathered, 16, k, merged);
        CHECK(merged == stream);
    }
}

TEST_CASE("sfd counters: l-1 cipher ops, l-1 xors") {
    std::mt19937_64 rng(0x07);
    SystemEntropySource entropy;
    const SfdScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 7 * 16);

    OpCounters c;
    scheme.protect(data, params, key, entropy, c);
    CHECK(c.block_cipher_ops == 7);
    CHECK(c.xor_ops == 7);
}

TEST_CASE("cross-scheme recovery is rejected") {
    std::mt19937_64 rng(0x08);
    SystemEntropySource entropy;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 1000);

    OpCounters c;
    const EncSplitScheme enc_split;
    auto result = enc_split.protect(data, params, key, entropy, c);

    const BastionScheme bastion;
    CHECK_THROWS_AS(bastion.recover(result.fragments, result.manifest, key, c), IntegrityError);

    const PeAontScheme pe;
    CHECK_THROWS_AS(pe.recover(result.fragments, result.manifest, key, c), IntegrityError);
}

TEST_CASE("table laws via the scheme interface for l in {8, 40, 4000}") {
    std::mt19937_64 rng(0x09);
    SystemEntropySource entropy;
    for (const std::size_t l : {8u, 40u, 4000u}) {
        for (auto scheme_id : {SchemeId::EncSplit, SchemeId::Bastion, SchemeId::Sfd}) {
            const auto scheme = make_scheme(scheme_id);
            const Params params = validate_params(4, 3, 16, CipherId::Aes128);
            const auto key = random_bytes(rng, 16);
            const auto data = random_bytes(rng, (l - 1) * 16);

            OpCounters c;
            scheme->protect(data, params, key, entropy, c);
            const auto expected = expected_protect_counters(scheme_id, params, l);
            CAPTURE(l);
            CAPTURE(to_string(scheme_id));
            CHECK(c.block_cipher_ops == expected.block_cipher_ops);
            CHECK(c.xor_ops == expected.xor_ops);
        }
    }
}
