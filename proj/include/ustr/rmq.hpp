#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ustr {

/// Range-maximum index over a fixed array of doubles.
///
/// Answers argmax(l, r) in O(1): positions are grouped into 32-wide blocks,
/// each position keeps a bitmask of the left-to-right max stack of its block
/// and a sparse table covers whole blocks. Ties go to the smallest index.
/// Space is 12 bytes per value plus O(n/32 log n) for the sparse table.
class RangeMaxIndex {
public:
    RangeMaxIndex() = default;
    explicit RangeMaxIndex(std::vector<double> values);

    std::size_t size() const noexcept { return values_.size(); }
    bool empty() const noexcept { return values_.empty(); }
    std::span<const double> values() const noexcept { return values_; }
    double value(std::size_t k) const { return values_[k]; }

    /// Index of the maximum in [l, r] (0-based, inclusive); smallest index on ties.
    /// Throws RangeError when l > r or r >= size().
    std::size_t argmax(std::size_t l, std::size_t r) const;

    std::size_t memory_bytes() const noexcept;

    template <class Archive>
    void save(Archive& ar) const { ar(values_); }
    template <class Archive>
    void load(Archive& ar) {
        std::vector<double> v;
        ar(v);
        *this = RangeMaxIndex(std::move(v));
    }

private:
    static constexpr std::size_t kBlock = 32;

    std::size_t in_block(std::size_t l, std::size_t r) const noexcept;

    std::vector<double> values_;
    std::vector<std::uint32_t> stack_masks_;
    // levels_[j][b] = argmax over blocks [b, b + 2^j)
    std::vector<std::vector<std::uint32_t>> levels_;
};

}  // namespace ustr
