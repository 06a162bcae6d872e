#pragma once

#include <cstddef>
#include <memory>

#include "ustr/factorize.hpp"
#include "ustr/textcore.hpp"

namespace ustr {

/// Transformed text with its suffix array and tree view; shared by the
/// substring, listing and approximate indexes built over the same input.
struct IndexedText {
    TransformedText tt;
    SuffixArrayIndex sa;
    TreeView tree;

    static std::shared_ptr<const IndexedText> build(TransformedText tt);

    /// Prefix probability of length `len` for suffix-array slot `k`; 0 when
    /// the suffix holds fewer than `len` symbols before its separator.
    Prob slot_probability(std::size_t k, std::size_t len) const {
        const std::size_t off = sa.sa()[k];
        return sa.real_length(off) < len ? 0.0 : tt.window_probability(off, len);
    }

    std::size_t memory_bytes() const noexcept { return tt.memory_bytes() + sa.memory_bytes() + tree.memory_bytes(); }

    template <class Archive>
    void serialize(Archive& ar) { ar(tt, sa, tree); }
};

}  // namespace ustr
