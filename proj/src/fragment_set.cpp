#include "peaont/fragment_set.hpp"

namespace peaont {

const char* to_string(FragmentState s) {
    switch (s) {
    case FragmentState::Raw: return "RAW";
    case FragmentState::PartiallyEncrypted: return "PARTIALLY_ENCRYPTED";
    case FragmentState::Transformed: return "TRANSFORMED";
    }
    return "?";
}

FragmentSet::FragmentSet(const Params& params, std::size_t blocks_per_fragment,
                         FragmentState state)
    : params_(params),
      blocks_per_fragment_(blocks_per_fragment),
      state_(state),
      data_(static_cast<std::size_t>(params.k) * blocks_per_fragment * params.block_size, 0),
      present_(static_cast<std::size_t>(params.k), true) {
    if (blocks_per_fragment == 0) {
        throw ParamsError("fragments must hold at least one block");
    }
}

std::span<std::uint8_t> FragmentSet::fragment(std::size_t index) {
    if (index >= static_cast<std::size_t>(params_.k)) {
        throw ParamsError("fragment index " + std::to_string(index) + " out of range");
    }
    const std::size_t frag_bytes = blocks_per_fragment_ * params_.block_size;
    return std::span<std::uint8_t>(data_).subspan(index * frag_bytes, frag_bytes);
}

std::span<const std::uint8_t> FragmentSet::fragment(std::size_t index) const {
    return const_cast<FragmentSet*>(this)->fragment(index);
}

std::span<std::uint8_t> FragmentSet::block(std::size_t index, std::size_t offset) {
    if (offset >= blocks_per_fragment_) {
        throw ParamsError("block offset " + std::to_string(offset) + " out of range");
    }
    return fragment(index).subspan(offset * params_.block_size, params_.block_size);
}

std::span<const std::uint8_t> FragmentSet::block(std::size_t index, std::size_t offset) const {
    return const_cast<FragmentSet*>(this)->block(index, offset);
}

RowView FragmentSet::row(std::size_t row_index) {
    RowView view;
    view.row_index = row_index;
    view.blocks.reserve(static_cast<std::size_t>(params_.k));
    for (int j = 0; j < params_.k; ++j) {
        view.blocks.push_back(block(static_cast<std::size_t>(j), row_index));
    }
    return view;
}

bool FragmentSet::present(std::size_t index) const {
    if (index >= present_.size()) {
        throw ParamsError("fragment index " + std::to_string(index) + " out of range");
    }
    return present_[index];
}

void FragmentSet::mark_missing(std::size_t index) {
    if (index >= present_.size()) {
        throw ParamsError("fragment index " + std::to_string(index) + " out of range");
    }
    present_[index] = false;
}

bool FragmentSet::complete() const {
    for (bool p : present_) {
        if (!p) return false;
    }
    return true;
}

std::vector<std::size_t> FragmentSet::missing_indices() const {
    std::vector<std::size_t> missing;
    for (std::size_t i = 0; i < present_.size(); ++i) {
        if (!present_[i]) missing.push_back(i);
    }
    return missing;
}

} // namespace peaont
