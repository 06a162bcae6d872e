#include "ustr/rmq.hpp"

#include <bit>
#include <string>

#include "ustr/errors.hpp"

namespace ustr {

namespace {

std::size_t pick(const std::vector<double>& v, std::size_t a, std::size_t b) noexcept {
    if (v[a] != v[b]) return v[a] > v[b] ? a : b;
    return a < b ? a : b;
}

}  // namespace

RangeMaxIndex::RangeMaxIndex(std::vector<double> values) : values_(std::move(values)) {
    const std::size_t n = values_.size();
    stack_masks_.resize(n);
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<std::uint32_t> block_max(blocks);

    for (std::size_t b = 0; b < blocks; ++b) {
        const std::size_t begin = b * kBlock;
        const std::size_t end = std::min(n, begin + kBlock);
        std::uint32_t mask = 0;
        for (std::size_t j = begin; j < end; ++j) {
            // pop strictly smaller values; equal earlier values stay (leftmost tie wins)
            while (mask != 0) {
                const std::size_t top = begin + (31 - std::countl_zero(mask));
                if (values_[top] >= values_[j]) break;
                mask &= ~(std::uint32_t{1} << (top - begin));
            }
            mask |= std::uint32_t{1} << (j - begin);
            stack_masks_[j] = mask;
        }
        block_max[b] = static_cast<std::uint32_t>(begin + std::countr_zero(stack_masks_[end - 1]));
    }

    if (blocks == 0) return;
    levels_.push_back(std::move(block_max));
    for (std::size_t width = 2; width <= blocks; width *= 2) {
        const auto& prev = levels_.back();
        const std::size_t half = width / 2;
        std::vector<std::uint32_t> next(blocks - width + 1);
        for (std::size_t b = 0; b + width <= blocks; ++b) {
            next[b] = static_cast<std::uint32_t>(pick(values_, prev[b], prev[b + half]));
        }
        levels_.push_back(std::move(next));
    }
}

std::size_t RangeMaxIndex::in_block(std::size_t l, std::size_t r) const noexcept {
    const std::size_t begin = l - l % kBlock;
    const std::uint32_t mask = stack_masks_[r] & (~std::uint32_t{0} << (l - begin));
    return begin + std::countr_zero(mask);
}

std::size_t RangeMaxIndex::argmax(std::size_t l, std::size_t r) const {
    if (l > r || r >= values_.size()) {
        throw RangeError("rmq range [" + std::to_string(l) + ", " + std::to_string(r) + "] invalid for size " +
                         std::to_string(values_.size()));
    }
    const std::size_t bl = l / kBlock;
    const std::size_t br = r / kBlock;
    if (bl == br) return in_block(l, r);

    std::size_t best = in_block(l, (bl + 1) * kBlock - 1);
    if (bl + 1 < br) {
        const std::size_t first = bl + 1;
        const std::size_t count = br - first;
        const std::size_t level = static_cast<std::size_t>(std::bit_width(count)) - 1;
        const auto& row = levels_[level];
        const std::size_t mid = pick(values_, row[first], row[br - (std::size_t{1} << level)]);
        best = pick(values_, best, mid);
    }
    return pick(values_, best, in_block(br * kBlock, r));
}

std::size_t RangeMaxIndex::memory_bytes() const noexcept {
    std::size_t bytes = values_.size() * sizeof(double) + stack_masks_.size() * sizeof(std::uint32_t);
    for (const auto& row : levels_) bytes += row.size() * sizeof(std::uint32_t);
    return bytes;
}

}  // namespace ustr
