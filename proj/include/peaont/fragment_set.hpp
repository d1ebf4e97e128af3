#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "peaont/errors.hpp"
#include "peaont/params.hpp"

namespace peaont {

enum class FragmentState {
    Raw,
    PartiallyEncrypted,
    Transformed,
};

const char* to_string(FragmentState s);

/// The k blocks at in-fragment offset `row_index`, one per fragment.
struct RowView {
    std::size_t row_index = 0;
    std::vector<std::span<std::uint8_t>> blocks;
};

/// k fragments of blocks_per_fragment blocks each, stored fragment-major in
/// one flat buffer. Fragment j owns stream offsets
/// [j * blocks_per_fragment, (j+1) * blocks_per_fragment).
class FragmentSet {
public:
    FragmentSet(const Params& params, std::size_t blocks_per_fragment, FragmentState state);

    const Params& params() const { return params_; }
    FragmentState state() const { return state_; }
    void set_state(FragmentState s) { state_ = s; }

    std::size_t blocks_per_fragment() const { return blocks_per_fragment_; }
    std::size_t total_blocks() const { return static_cast<std::size_t>(params_.k) * blocks_per_fragment_; }

    /// The whole fragment-major stream, total_blocks() * block_size bytes.
    std::span<std::uint8_t> bytes() { return data_; }
    std::span<const std::uint8_t> bytes() const { return data_; }

    std::span<std::uint8_t> fragment(std::size_t index);
    std::span<const std::uint8_t> fragment(std::size_t index) const;

    /// Block at in-fragment offset `offset` of fragment `index`.
    std::span<std::uint8_t> block(std::size_t index, std::size_t offset);
    std::span<const std::uint8_t> block(std::size_t index, std::size_t offset) const;

    RowView row(std::size_t row_index);

    bool present(std::size_t index) const;
    void mark_missing(std::size_t index);
    bool complete() const;
    std::vector<std::size_t> missing_indices() const;

private:
    Params params_;
    std::size_t blocks_per_fragment_;
    FragmentState state_;
    std::vector<std::uint8_t> data_;
    std::vector<bool> present_;
};

} // namespace peaont
