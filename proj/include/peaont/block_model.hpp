#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "peaont/params.hpp"

namespace peaont {

/// Zero-padded whole-block plaintext. bytes.size() == padded_blocks * block_size.
struct PaddedInput {
    std::vector<std::uint8_t> bytes;
    std::size_t padded_blocks = 0;
};

/// The m' rule: the smallest block count with (m' + 1) divisible by k and
/// m' * block_size >= data_len.
std::size_t padded_block_count(std::size_t data_len, const Params& params);

/// Copies data into the smallest zero-filled whole-block buffer satisfying
/// the m' rule. The original length is not encoded here; it travels in the
/// manifest. Rejects empty input.
PaddedInput pad_and_blockify(std::span<const std::uint8_t> data, const Params& params);

} // namespace peaont
