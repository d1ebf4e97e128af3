#include "peaont/cipher.hpp"

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <array>
#include <cstring>
#include <limits>

#include "peaont/bytes.hpp"
#include "peaont/errors.hpp"

namespace peaont {

void SystemEntropySource::fill(std::span<std::uint8_t> out) {
    if (out.empty()) return;
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1) {
        throw Error("system entropy source failure");
    }
}

FixedEntropySource::FixedEntropySource(std::vector<std::uint8_t> pattern)
    : pattern_(std::move(pattern)) {
    if (pattern_.empty()) {
        throw ParamsError("fixed entropy pattern must be non-empty");
    }
}

void FixedEntropySource::fill(std::span<std::uint8_t> out) {
    for (auto& b : out) {
        b = pattern_[pos_];
        pos_ = (pos_ + 1) % pattern_.size();
    }
}

namespace {

constexpr std::size_t kAesBlock = 16;
constexpr std::size_t kAesKey = 16;

// Per-block EVP calls dominate the CBC hot path, so the context and key
// schedule are cached per thread and reused while the key stays the same.
struct CachedCtx {
    EVP_CIPHER_CTX* ctx = nullptr;
    std::array<std::uint8_t, kAesKey> key{};
    bool valid = false;

    ~CachedCtx() {
        if (ctx) EVP_CIPHER_CTX_free(ctx);
    }
};

EVP_CIPHER_CTX* aes_ctx(bool encrypt, std::span<const std::uint8_t> key) {
    thread_local CachedCtx enc_cache;
    thread_local CachedCtx dec_cache;
    CachedCtx& c = encrypt ? enc_cache : dec_cache;

    if (c.valid && std::memcmp(c.key.data(), key.data(), kAesKey) == 0) {
        return c.ctx;
    }
    if (!c.ctx) {
        c.ctx = EVP_CIPHER_CTX_new();
        if (!c.ctx) throw Error("EVP context allocation failed");
    }
    c.valid = false;
    const int ok =
        encrypt ? EVP_EncryptInit_ex(c.ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr)
                : EVP_DecryptInit_ex(c.ctx, EVP_aes_128_ecb(), nullptr, key.data(), nullptr);
    if (ok != 1) throw Error("AES-128 key setup failed");
    EVP_CIPHER_CTX_set_padding(c.ctx, 0);
    std::memcpy(c.key.data(), key.data(), kAesKey);
    c.valid = true;
    return c.ctx;
}

void check_block_args(const BlockCipher& cipher, std::span<const std::uint8_t> key,
                      std::span<const std::uint8_t> in, std::span<std::uint8_t> out) {
    if (key.size() != cipher.key_length()) {
        throw KeyError("key must be " + std::to_string(cipher.key_length()) + " bytes for " +
                       to_string(cipher.id()) + ", got " + std::to_string(key.size()));
    }
    if (in.size() != cipher.block_width() || out.size() != cipher.block_width()) {
        throw ParamsError("block must be exactly " + std::to_string(cipher.block_width()) +
                          " bytes");
    }
}

class Aes128Cipher final : public BlockCipher {
public:
    CipherId id() const override { return CipherId::Aes128; }
    std::size_t block_width() const override { return kAesBlock; }
    std::size_t key_length() const override { return kAesKey; }

    void encrypt_block(std::span<const std::uint8_t> key, std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override {
        check_block_args(*this, key, in, out);
        EVP_CIPHER_CTX* ctx = aes_ctx(true, key);
        int len = 0;
        if (EVP_EncryptUpdate(ctx, out.data(), &len, in.data(), kAesBlock) != 1 ||
            len != static_cast<int>(kAesBlock)) {
            throw Error("AES-128 block encryption failed");
        }
    }

    void decrypt_block(std::span<const std::uint8_t> key, std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override {
        check_block_args(*this, key, in, out);
        EVP_CIPHER_CTX* ctx = aes_ctx(false, key);
        int len = 0;
        if (EVP_DecryptUpdate(ctx, out.data(), &len, in.data(), kAesBlock) != 1 ||
            len != static_cast<int>(kAesBlock)) {
            throw Error("AES-128 block decryption failed");
        }
    }

    bool cbc_bulk(bool encrypt, std::span<const std::uint8_t> key,
                  std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                  std::span<std::uint8_t> out) const override {
        if (in.size() > static_cast<std::size_t>(std::numeric_limits<int>::max())) {
            return false; // EVP update takes int lengths; per-block loop handles the rest
        }
        EVP_CIPHER_CTX* ctx = EVP_CIPHER_CTX_new();
        if (!ctx) throw Error("EVP context allocation failed");
        const int ok = encrypt ? EVP_EncryptInit_ex(ctx, EVP_aes_128_cbc(), nullptr, key.data(),
                                                    iv.data())
                               : EVP_DecryptInit_ex(ctx, EVP_aes_128_cbc(), nullptr, key.data(),
                                                    iv.data());
        if (ok != 1) {
            EVP_CIPHER_CTX_free(ctx);
            throw Error("AES-128 CBC setup failed");
        }
        EVP_CIPHER_CTX_set_padding(ctx, 0);
        int len = 0;
        const int rc = encrypt ? EVP_EncryptUpdate(ctx, out.data(), &len, in.data(),
                                                   static_cast<int>(in.size()))
                               : EVP_DecryptUpdate(ctx, out.data(), &len, in.data(),
                                                   static_cast<int>(in.size()));
        EVP_CIPHER_CTX_free(ctx);
        if (rc != 1 || len != static_cast<int>(in.size())) {
            throw Error("AES-128 CBC stream operation failed");
        }
        return true;
    }
};

class NullTestCipher final : public BlockCipher {
public:
    CipherId id() const override { return CipherId::NullTest; }
    std::size_t block_width() const override { return kAesBlock; }
    std::size_t key_length() const override { return kAesKey; }

    void encrypt_block(std::span<const std::uint8_t> key, std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override {
        check_block_args(*this, key, in, out);
        if (out.data() != in.data()) {
            std::memcpy(out.data(), in.data(), in.size());
        }
    }

    void decrypt_block(std::span<const std::uint8_t> key, std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) const override {
        encrypt_block(key, in, out);
    }
};

} // namespace

const BlockCipher& get_cipher(CipherId id) {
    static const Aes128Cipher aes;
    static const NullTestCipher null_test;
    switch (id) {
    case CipherId::Aes128: return aes;
    case CipherId::NullTest: return null_test;
    }
    throw ParamsError("unknown cipher id");
}

namespace {

void check_stream_args(const BlockCipher& cipher, std::span<const std::uint8_t> key,
                       std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                       std::span<std::uint8_t> out) {
    const std::size_t bs = cipher.block_width();
    if (key.size() != cipher.key_length()) {
        throw KeyError("key must be " + std::to_string(cipher.key_length()) + " bytes for " +
                       to_string(cipher.id()) + ", got " + std::to_string(key.size()));
    }
    if (iv.size() != bs) {
        throw ParamsError("iv must be one block (" + std::to_string(bs) + " bytes)");
    }
    if (in.size() != out.size()) {
        throw ParamsError("cbc: input and output lengths differ");
    }
    if (in.empty() || in.size() % bs != 0) {
        throw ParamsError("cbc: data must be a non-empty whole number of blocks");
    }
}

} // namespace

void cbc_encrypt(const BlockCipher& cipher, std::span<const std::uint8_t> key,
                 std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                 std::span<std::uint8_t> out, OpCounters& counters) {
    check_stream_args(cipher, key, iv, in, out);
    const std::size_t bs = cipher.block_width();
    const std::size_t n = in.size() / bs;

    if (cipher.cbc_bulk(true, key, iv, in, out)) {
        counters.block_cipher_ops += n;
        counters.xor_ops += n;
        return;
    }

    std::vector<std::uint8_t> buf(bs);
    const std::uint8_t* prev = iv.data();
    for (std::size_t i = 0; i < n; ++i) {
        // buf = P_i ^ C_{i-1}; read before write so in may alias out.
        std::memcpy(buf.data(), in.data() + i * bs, bs);
        for (std::size_t b = 0; b < bs; ++b) buf[b] ^= prev[b];
        cipher.encrypt_block(key, buf, out.subspan(i * bs, bs));
        prev = out.data() + i * bs;
    }
    counters.block_cipher_ops += n;
    counters.xor_ops += n;
}

void cbc_decrypt(const BlockCipher& cipher, std::span<const std::uint8_t> key,
                 std::span<const std::uint8_t> iv, std::span<const std::uint8_t> in,
                 std::span<std::uint8_t> out, OpCounters& counters) {
    check_stream_args(cipher, key, iv, in, out);
    const std::size_t bs = cipher.block_width();
    const std::size_t n = in.size() / bs;

    if (cipher.cbc_bulk(false, key, iv, in, out)) {
        counters.block_cipher_ops += n;
        counters.xor_ops += n;
        return;
    }

    std::vector<std::uint8_t> prev(iv.begin(), iv.end());
    std::vector<std::uint8_t> cur(bs);
    for (std::size_t i = 0; i < n; ++i) {
        // Save C_i first: with in aliasing out it is destroyed by the write.
        std::memcpy(cur.data(), in.data() + i * bs, bs);
        auto dst = out.subspan(i * bs, bs);
        cipher.decrypt_block(key, cur, dst);
        for (std::size_t b = 0; b < bs; ++b) dst[b] ^= prev[b];
        std::swap(prev, cur);
    }
    counters.block_cipher_ops += n;
    counters.xor_ops += n;
}

namespace {

std::vector<std::uint8_t> flatten_blocks(const BlockCipher& cipher, std::span<const Block> blocks) {
    const std::size_t bs = cipher.block_width();
    std::vector<std::uint8_t> flat;
    flat.reserve(blocks.size() * bs);
    for (const Block& b : blocks) {
        if (b.size() != bs) {
            throw ParamsError("block must be exactly " + std::to_string(bs) + " bytes, got " +
                              std::to_string(b.size()));
        }
        flat.insert(flat.end(), b.begin(), b.end());
    }
    return flat;
}

std::vector<Block> split_blocks(std::span<const std::uint8_t> flat, std::size_t bs) {
    std::vector<Block> out(flat.size() / bs);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i].assign(flat.begin() + i * bs, flat.begin() + (i + 1) * bs);
    }
    return out;
}

} // namespace

std::vector<Block> cbc_encrypt(const BlockCipher& cipher, std::span<const Block> plain,
                               std::span<const std::uint8_t> key, const Block& iv,
                               OpCounters& counters) {
    auto flat = flatten_blocks(cipher, plain);
    cbc_encrypt(cipher, key, iv, flat, flat, counters);
    return split_blocks(flat, cipher.block_width());
}

std::vector<Block> cbc_decrypt(const BlockCipher& cipher, std::span<const Block> cipher_blocks,
                               std::span<const std::uint8_t> key, const Block& iv,
                               OpCounters& counters) {
    auto flat = flatten_blocks(cipher, cipher_blocks);
    cbc_decrypt(cipher, key, iv, flat, flat, counters);
    return split_blocks(flat, cipher.block_width());
}

Block random_iv(EntropySource& entropy, std::size_t block_size) {
    if (block_size == 0) {
        throw ParamsError("block size must be positive");
    }
    Block iv(block_size);
    entropy.fill(iv);
    return iv;
}

} // namespace peaont
