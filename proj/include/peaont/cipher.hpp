#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "peaont/params.hpp"

namespace peaont {

/// One block as a standalone value. Bulk pipelines work on flat byte spans;
/// this is the unit used at API boundaries and in tests.
using Block = std::vector<std::uint8_t>;

/// Counts of block-cipher invocations and block-wide exclusive-ors for one
/// pipeline run. One xor op = one XOR of block_size bytes.
struct OpCounters {
    std::uint64_t block_cipher_ops = 0;
    std::uint64_t xor_ops = 0;

    void reset() { block_cipher_ops = 0; xor_ops = 0; }
};

class EntropySource {
public:
    virtual ~EntropySource() = default;
    virtual void fill(std::span<std::uint8_t> out) = 0;
};

/// OS CSPRNG.
class SystemEntropySource final : public EntropySource {
public:
    void fill(std::span<std::uint8_t> out) override;
};

/// Repeats a fixed byte pattern; for deterministic tests only.
class FixedEntropySource final : public EntropySource {
public:
    explicit FixedEntropySource(std::vector<std::uint8_t> pattern);
    void fill(std::span<std::uint8_t> out) override;

private:
    std::vector<std::uint8_t> pattern_;
    std::size_t pos_ = 0;
};

/// A block cipher as a pure per-block permutation. Implementations are
/// stateless and thread-safe.
class BlockCipher {
public:
    virtual ~BlockCipher() = default;

    virtual CipherId id() const = 0;
    virtual std::size_t block_width() const = 0;
    virtual std::size_t key_length() const = 0;

    /// in and out are exactly block_width() bytes; in may alias out.
    virtual void encrypt_block(std::span<const std::uint8_t> key,
                               std::span<const std::uint8_t> in,
                               std::span<std::uint8_t> out) const = 0;
    virtual void decrypt_block(std::span<const std::uint8_t> key,
                               std::span<const std::uint8_t> in,
                               std::span<std::uint8_t> out) const = 0;

    /// Optional whole-stream CBC fast path. Returns false when the generic
    /// per-block loop should run instead. Must produce bit-identical output
    /// to that loop.
    virtual bool cbc_bulk(bool encrypt, std::span<const std::uint8_t> key,
                          std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                          std::span<std::uint8_t> out) const {
        (void)encrypt;
        (void)key;
        (void)iv;
        (void)in;
        (void)out;
        return false;
    }
};

/// Process-wide cipher instances (stateless, shareable).
const BlockCipher& get_cipher(CipherId id);

/// CBC over whole-block buffers: C_i = E_K(P_i ^ C_{i-1}), C_0 = iv. The iv
/// itself is not part of the output. in may alias out. Adds n to both
/// counters for n blocks processed.
void cbc_encrypt(const BlockCipher& cipher, std::span<const std::uint8_t> key,
                 std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                 std::span<std::uint8_t> out, OpCounters& counters);

/// Exact inverse of cbc_encrypt with the same key/iv; counter increments
/// mirror encryption.
void cbc_decrypt(const BlockCipher& cipher, std::span<const std::uint8_t> key,
                 std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                 std::span<std::uint8_t> out, OpCounters& counters);

/// Convenience forms over block lists.
std::vector<Block> cbc_encrypt(const BlockCipher& cipher, std::span<const Block> plain,
                               std::span<const std::uint8_t> key, const Block& iv,
                               OpCounters& counters);
std::vector<Block> cbc_decrypt(const BlockCipher& cipher, std::span<const Block> cipher_blocks,
                               std::span<const std::uint8_t> key, const Block& iv,
                               OpCounters& counters);

/// One block of fresh IV material from the entropy source.
Block random_iv(EntropySource& entropy, std::size_t block_size);

} // namespace peaont
