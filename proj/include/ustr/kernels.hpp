#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "ustr/execution.hpp"
#include "ustr/indexed_text.hpp"

/// Data-parallel build kernels. Each has a serial reference path and an
/// OpenMP path selected by Execution; results are identical.
namespace ustr::kernels {

/// slot_probability(k, len) for every slot.
std::vector<Prob> prefix_probabilities(const IndexedText& text, std::size_t len, Execution exec);

/// Half-open slot ranges of the depth-`len` groups: maximal runs of slots
/// whose suffixes share `len` symbols. Slots whose suffix is shorter than
/// `len` belong to no group.
struct Group {
    std::uint32_t begin;
    std::uint32_t end;
};
std::vector<Group> depth_groups(const IndexedText& text, std::size_t len);

/// Zeroes every value whose key already appeared earlier in the same group,
/// so each key survives once per group at its leftmost slot. key(k) < key_count.
void keep_leftmost(std::span<Prob> values, std::span<const Group> groups, std::span<const std::uint32_t> keys,
                   std::size_t key_count, Execution exec);

/// pb[i - first][b] = max over slots [b*i, (b+1)*i) of slot_probability(slot, i),
/// for i in [first, last].
std::vector<std::vector<Prob>> block_maxima(const IndexedText& text, std::size_t first, std::size_t last,
                                            Execution exec);

}  // namespace ustr::kernels
