#include "peaont/block_model.hpp"

#include <algorithm>
#include <cstring>

#include "peaont/errors.hpp"

namespace peaont {

std::size_t padded_block_count(std::size_t data_len, const Params& params) {
    if (data_len == 0) {
        throw ParamsError("input data must be non-empty");
    }
    const std::size_t bs = params.block_size;
    const std::size_t k = static_cast<std::size_t>(params.k);
    std::size_t m = (data_len + bs - 1) / bs;
    // Smallest m' >= ceil(len/bs) with (m' + 1) divisible by k: the extra
    // slot is the IV block inserted during encryption.
    while ((m + 1) % k != 0) {
        ++m;
    }
    return m;
}

PaddedInput pad_and_blockify(std::span<const std::uint8_t> data, const Params& params) {
    PaddedInput out;
    out.padded_blocks = padded_block_count(data.size(), params);
    out.bytes.assign(out.padded_blocks * params.block_size, 0);
    std::memcpy(out.bytes.data(), data.data(), data.size());
    return out;
}

} // namespace peaont
